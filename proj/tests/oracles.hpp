// Independent cross-check implementations used by the tests only. These
// deliberately avoid the library's computation paths: behaviors via the
// plain 16x16 trace formula, witness values via the fully expanded outcome
// sums, and full-local feasibility via deterministic enumeration plus a
// pinned-marginal scan with exact LPs.
#pragma once

#include <cstdint>

#include "qnet/classifier.hpp"
#include "qnet/witness.hpp"

namespace qnet::oracle {

/// p(a,b,c|x,z) = Tr[(rho1 (x) rho2) (A (x) Pi_b (x) C)] computed on the full
/// 16-dimensional space.
Behavior behavior_direct(const Strategy& s);

/// FNN values expanded directly into the 32 behavior entries and their
/// products, without going through CorrelatorSet.
std::pair<double, double> fnn_direct(const Behavior& b);

struct OracleDecision {
    bool feasible = false;
    double residual = 0.0;
};

/// Full-variant feasibility at mixing weight t: deterministic
/// (Alice,Carol)-pair enumeration with an exact LP over the b-response,
/// extended to mixed factors by scanning the pinned-marginal Alice family
/// and solving the remaining (Carol-correlation, b-mass) LP exactly.
OracleDecision full_local_oracle(const Behavior& p, double t, double epsilon = 1e-6);

/// Random strategies for property tests (angles uniform in [0, pi), noise
/// and feedback parameters drawn from simple ranges).
Strategy random_strategy(std::uint64_t seed, bool random_noise = true);

/// Eavesdropper joint table computed on the dense 256-dimensional space
/// with explicit register ordering (A, B0, B1, C, E0, E1).
JointTable joint_table_dense(const Strategy& s, const PurifiedSources& src,
                             const EveMeasurement& eve, int x, int z);

}  // namespace qnet::oracle
