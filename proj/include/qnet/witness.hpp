#pragma once

#include "qnet/bilocal.hpp"

namespace qnet {

/// Signed-outcome means of a behavior; indices are 0-based settings.
struct CorrelatorSet {
    double tri[2][2];  // <A_x B C_z>
    double ab[2];      // <A_x B>
    double bc[2];      // <B C_z>
    double a[2];       // <A_x>
    double c[2];       // <C_z>
    double b;          // <B>
};

struct WitnessResult {
    double fnn1 = 0.0;
    double fnn2 = 0.0;
    bool violated1 = false;   // strictly > 1
    bool violated2 = false;
    bool simultaneous = false;
    double margin1 = 0.0;     // fnn - 1
    double margin2 = 0.0;
};

CorrelatorSet correlators(const Behavior& b);

/// The two full-network-nonlocality witness polynomials; both must stay <= 1
/// for any model in which at least one source is classical.
WitnessResult fnn_values(const Behavior& b);

struct FactorizationReport {
    double max_deviation = 0.0;
    bool holds(double tol = kDefaultTol) const { return max_deviation <= tol; }
};

/// Verifies that a one-way feedforward strategy (feedback mode with p in
/// {0,1} and alpha0 = alpha1 = 1) factorizes as
///   p(a,b,c|x,z) = sum_{b0 xor b1 = b} p(a,b0|x) p(b1,c|b0,z)
/// (or the mirrored form for p = 0). Throws for other strategies.
FactorizationReport check_oneway_factorization(const Strategy& s);

}  // namespace qnet
