#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qnet/witness.hpp"

#include <json.hpp>

namespace qnet {

using Json = nlohmann::json;

/// Accepts plain radians (number or numeric string) or a rational multiple
/// of pi written "n/d" (optionally negative), e.g. "41/103" = 41*pi/103.
double parse_angle(const Json& v);

AngleSet angles_from_json(const Json& j);

/// Strategy spec:
///   {"nu": 0.0, "angles": "optimal" | {...},
///    "central": {"mode":"feedback","p":0.5,"alpha0":1,"alpha1":1}}
/// Sources may also be split as "nu1"/"nu2".
Strategy strategy_from_json(const Json& j);

Json behavior_to_json(const Behavior& b);
Behavior behavior_from_json(const Json& j);

Json witness_to_json(const WitnessResult& w);

/// CSV writer with `#`-prefixed reproducibility header lines.
void write_csv(std::ostream& os, const std::vector<std::string>& header_comments,
               const std::string& columns,
               const std::vector<std::vector<std::string>>& rows);

std::string format_double(double v);

}  // namespace qnet
