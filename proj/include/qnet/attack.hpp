#pragma once

#include "qnet/optimizer.hpp"

namespace qnet {

enum class AttackScenario { SE, DE };
enum class AttackTarget { AC, ABC };

std::string to_string(AttackScenario s);
std::string to_string(AttackTarget t);

/// Honest strategy plus purifications of its Werner sources; the eavesdropper
/// holds the purifying registers E0, E1 (and, in the SE scenario, a classical
/// copy of b).
struct AttackModel {
    AttackScenario scenario = AttackScenario::SE;
    Strategy honest;
    PurifiedSources sources;
    double nu = 0.0;  // fitted Werner parameter of the sources
};

/// Throws for sources that are not Werner states.
AttackModel build_attack_model(const Strategy& s, AttackScenario scenario);

struct AttackResult {
    AttackScenario scenario = AttackScenario::SE;
    AttackTarget target = AttackTarget::AC;
    int x = 0, z = 0;
    double pg_lower_bound = 0.0;
    double hmin_upper_bound = 0.0;
    std::vector<double> trace;  // candidate / restart values
    EveMeasurement best_measurement;
};

/// Printed guessing-probability sum for explicit eavesdropper measurements;
/// SE targets use the classical copy of b exactly.
double guessing_probability(const AttackModel& m, AttackTarget target, int x, int z,
                            const EveMeasurement& eve);

/// Maximizes the guessing probability over parameterized eavesdropper
/// measurements (structured candidates plus derivative-free refinement);
/// the result is a lower bound on the optimal P_g by construction.
AttackResult optimize_attack(const AttackModel& m, AttackTarget target, int x, int z,
                             const OptimizationConfig& cfg);

/// Best attack over the four setting pairs: the pair with the largest
/// min-entropy upper bound, mirroring certification over optimal settings.
AttackResult optimize_attack_best_settings(const AttackModel& m, AttackTarget target,
                                           const OptimizationConfig& cfg);

enum class StrategyFamily { separable_feedback, entangled_central };

struct EntropySweepRow {
    double nu = 0.0;
    AttackScenario scenario = AttackScenario::SE;
    AttackTarget target = AttackTarget::AC;
    double pg_lb = 0.0;
    double hmin_ub = 0.0;
    int x = 0, z = 0;
};

std::vector<EntropySweepRow> entropy_sweep(StrategyFamily family,
                                           const std::vector<double>& nu_grid,
                                           AttackScenario scenario, AttackTarget target,
                                           const OptimizationConfig& cfg);

// Structured eavesdropper measurements (exposed for tests).
EveMeasurement blind_guess(AttackScenario scenario, AttackTarget target, int guess_e,
                           int guess_f = 0);
EveMeasurement aligned_purification_attack(const AttackModel& m, AttackTarget target,
                                           int x, int z);

}  // namespace qnet
