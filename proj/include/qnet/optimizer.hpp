#pragma once

#include <cstdint>
#include <vector>

#include "qnet/witness.hpp"

namespace qnet {

enum class Objective { min_of_pair, fixed_weights };

struct OptimizationConfig {
    Objective objective = Objective::min_of_pair;
    int restarts = 64;
    std::uint64_t seed = 1;
    int max_iterations = 4000;
    double convergence_tol = 1e-10;
    double simplex_scale = 0.5;  // radians, initial simplex step
    double weight1 = 0.5;        // fixed_weights mode
    double weight2 = 0.5;
    int seesaw_rounds = 12;      // entangled mode
};

struct OptimizationResult {
    double best_value = 0.0;
    AngleSet best_angles;            // separable mode
    Povm best_central;               // entangled mode (binary POVM, dim 4)
    std::vector<double> trace;       // value per restart (or per see-saw restart)
    std::vector<std::vector<double>> seesaw_rounds;  // per restart, per round
    long evaluations = 0;
};

/// Builds a unitary as a product of two-level rotations (theta, phi per
/// coordinate pair) followed by diagonal phases: n*(n-1) + n parameters.
ComplexMatrix unitary_from_angles(const std::vector<double>& params, int n);

double objective_value(const WitnessResult& w, const OptimizationConfig& cfg);

/// Maximizes the FNN objective over the ten projection angles with
/// werner(nu) sources and the noise-free balanced feedback measurement.
/// Optional warm starts are evaluated and refined ahead of random restarts.
OptimizationResult optimize_separable(double nu, const OptimizationConfig& cfg,
                                      const std::vector<AngleSet>& warm_starts = {});

struct ThresholdResult {
    double nu_low = 0.0;   // violating side
    double nu_high = 0.0;  // non-violating side
    double nu_star = 0.0;  // midpoint
    std::vector<double> probe_values;
};

/// Bisection of the largest nu with optimized min(FNN1,FNN2) > 1,
/// re-optimizing at each probe with warm starts; bracket width <= 1e-4.
ThresholdResult noise_threshold(const OptimizationConfig& cfg);

/// See-saw over outer angles and a general binary central POVM
/// Pi_0 = U diag(d) U^dagger, Pi_1 = I - Pi_0.
OptimizationResult optimize_entangled(double nu, const OptimizationConfig& cfg);

enum class SweepMode { separable_fixed_angles, separable_reopt, entangled };

struct SweepRow {
    double nu = 0.0;
    double fnn1 = 0.0;
    double fnn2 = 0.0;
};

std::vector<SweepRow> sweep_fnn(const std::vector<double>& nu_grid, SweepMode mode,
                                const OptimizationConfig& cfg);

}  // namespace qnet
