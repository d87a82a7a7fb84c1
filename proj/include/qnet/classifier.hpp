#pragma once

#include <string>

#include "qnet/bilocal.hpp"
#include "qnet/simplex.hpp"

namespace qnet {

enum class LocalVariant { full, left, right };

enum class Label { Classical, MNN, FNN, LeftLocalOnly, RightLocalOnly };

std::string to_string(Label l);
std::string to_string(LocalVariant v);

/// Local-noise target: t^2 P + t(1-t)(P(a|x)+P(c|z))/4 + (1-t)^2/8,
/// indexed like a Behavior.
struct TargetTable {
    double t = 1.0;
    std::array<double, 32> v{};
    double& at(int x, int z, int a, int b, int c) {
        return v[static_cast<std::size_t>((((x * 2 + z) * 2 + a) * 2 + b) * 2 + c)];
    }
    double at(int x, int z, int a, int b, int c) const {
        return v[static_cast<std::size_t>((((x * 2 + z) * 2 + a) * 2 + b) * 2 + c)];
    }
};

TargetTable noisy_target(const Behavior& p, double t);

/// Factorized witness for a (semi-)local model. For the full variant the
/// joint lives on (avec, b, cvec) with independence of the two unpacked
/// factors; for left/right only one side is unpacked and the tables are
/// per-setting of the packed side.
struct UnpackedDistribution {
    LocalVariant variant = LocalVariant::full;
    Eigen::VectorXd unpacked_factor;  // q over 4 atoms (avec or cvec)
    Eigen::VectorXd packed_factor;    // full: r over 4 atoms; left/right: r_z(c) 4 values
    Eigen::VectorXd b_mass;           // u: joint mass of outcome b=0 per atom pair (16)
};

struct ClassifierConfig {
    double epsilon = 1e-6;       // feasibility residual threshold
    double delta = 5e-3;         // classification margin on t
    double bisect_width = 1e-3;
    int seesaw_rounds = 8;
    int gamma_seeds = 9;
    int random_seeds = 3;
    std::uint64_t seed = 17;
};

struct FeasibilityResult {
    bool feasible = false;
    double residual = 0.0;  // L1 matching residual of the best witness
    UnpackedDistribution witness;
};

/// Decides whether an unpacked (semi-)local model matches noisy_target(p, t)
/// by alternating linear programs over the bilinear factorization, with
/// deterministic, pinned-marginal and random multi-starts.
FeasibilityResult feasibility(const Behavior& p, double t, LocalVariant variant,
                              const ClassifierConfig& cfg = {});

/// Largest t with a feasible model, by bisection; feasibility is monotone
/// decreasing in t under this noise model.
double robustness(const Behavior& p, LocalVariant variant, const ClassifierConfig& cfg = {});

struct RobustnessResult {
    double t_full = 0.0, t_left = 0.0, t_right = 0.0;
    double residual_full = 0.0, residual_left = 0.0, residual_right = 0.0;
    Label label = Label::Classical;
};

RobustnessResult classify(const Behavior& p, const ClassifierConfig& cfg = {});

struct RegionCell {
    double p = 0.0;
    double alpha = 0.0;
    RobustnessResult result;
};

/// Classifies the noisy feedback strategy on two werner(nu) sources over a
/// (p, alpha1) grid with alpha0 fixed; cells are ordered p-major.
std::vector<RegionCell> region_map(const std::vector<double>& p_grid,
                                   const std::vector<double>& alpha_grid,
                                   double alpha0 = 1.0, double nu = 0.0,
                                   const AngleSet& angles = optimal_separable_angles(),
                                   const ClassifierConfig& cfg = {}, int workers = 1);

}  // namespace qnet
