// The per-module invariant and property groups, shared between the unit
// wrapper (quick sizes) and the acceptance runner (full sizes).
#pragma once

#include <string>
#include <vector>

namespace qnet::testing {

struct InvariantReport {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<InvariantReport> run_invariant_suites(bool quick);

}  // namespace qnet::testing
