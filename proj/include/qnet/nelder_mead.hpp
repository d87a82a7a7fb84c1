#pragma once

#include <functional>

#include <Eigen/Dense>

namespace qnet {

struct NmOptions {
    int max_iter = 4000;
    double xatol = 1e-10;
    double fatol = 1e-12;
    double initial_step = 0.5;
};

struct NmResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
};

/// Downhill-simplex minimization; deterministic for a fixed start.
NmResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                     const Eigen::VectorXd& x0, const NmOptions& opt = {});

}  // namespace qnet
