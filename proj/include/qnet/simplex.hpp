#pragma once

#include <Eigen/Dense>

namespace qnet {

/// min cost . x   s.t.  a_eq x = b_eq,  a_ub x <= b_ub,  x >= 0.
/// Either constraint block may be empty (0 rows).
struct LpProblem {
    Eigen::MatrixXd a_eq;
    Eigen::VectorXd b_eq;
    Eigen::MatrixXd a_ub;
    Eigen::VectorXd b_ub;
    Eigen::VectorXd cost;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
    LpStatus status = LpStatus::iteration_limit;
    Eigen::VectorXd x;
    double objective = 0.0;
};

/// Dense two-phase primal simplex; Dantzig pricing with a Bland fallback
/// for anti-cycling. Intended for small problems (tens of rows/columns).
LpResult solve_lp(const LpProblem& p);

}  // namespace qnet
