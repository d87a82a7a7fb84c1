#include "qnet/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qnet {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

struct Tableau {
    Eigen::MatrixXd a;      // m x n
    Eigen::VectorXd b;      // m, kept >= 0
    std::vector<int> basis; // m basic column indices

    int rows() const { return static_cast<int>(a.rows()); }
    int cols() const { return static_cast<int>(a.cols()); }

    void pivot(int r, int col) {
        const double piv = a(r, col);
        a.row(r) /= piv;
        b(r) /= piv;
        for (int i = 0; i < rows(); ++i) {
            if (i == r) continue;
            const double f = a(i, col);
            if (f == 0.0) continue;
            a.row(i) -= f * a.row(r);
            b(i) -= f * b(r);
        }
        basis[static_cast<std::size_t>(r)] = col;
    }
};

enum class RunOutcome { optimal, unbounded, iteration_limit };

// Minimizes the reduced-cost vector over the tableau in place; `active`
// masks out dropped columns. Dantzig pricing, Bland fallback against cycling.
RunOutcome run_simplex(Tableau& t, Eigen::VectorXd& cost, const std::vector<bool>& active,
                       long max_iter) {
    long iter = 0;
    const long bland_after = 4L * (t.rows() + t.cols());
    while (iter++ < max_iter) {
        int col = -1;
        if (iter < bland_after) {
            double best = -kCostTol;
            for (int j = 0; j < t.cols(); ++j)
                if (active[static_cast<std::size_t>(j)] && cost(j) < best) {
                    best = cost(j);
                    col = j;
                }
        } else {
            for (int j = 0; j < t.cols(); ++j)
                if (active[static_cast<std::size_t>(j)] && cost(j) < -kCostTol) {
                    col = j;
                    break;
                }
        }
        if (col < 0) return RunOutcome::optimal;

        int row = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < t.rows(); ++i) {
            const double aij = t.a(i, col);
            if (aij > kPivotTol) {
                const double ratio = t.b(i) / aij;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && row >= 0 &&
                     t.basis[static_cast<std::size_t>(i)] < t.basis[static_cast<std::size_t>(row)])) {
                    best_ratio = ratio;
                    row = i;
                }
            }
        }
        if (row < 0) return RunOutcome::unbounded;
        const double f = cost(col);
        t.pivot(row, col);
        cost -= f * t.a.row(row).transpose();
    }
    return RunOutcome::iteration_limit;
}

}  // namespace

LpResult solve_lp(const LpProblem& p) {
    const int nx = static_cast<int>(p.cost.size());
    const int me = static_cast<int>(p.a_eq.rows());
    const int mu = static_cast<int>(p.a_ub.rows());
    if ((me > 0 && p.a_eq.cols() != nx) || (mu > 0 && p.a_ub.cols() != nx))
        throw std::invalid_argument("solve_lp: constraint width mismatch");
    const int m = me + mu;
    const int n = nx + mu + m;  // original + slack + artificial

    Tableau t;
    t.a = Eigen::MatrixXd::Zero(m, n);
    t.b = Eigen::VectorXd::Zero(m);
    if (me > 0) {
        t.a.block(0, 0, me, nx) = p.a_eq;
        t.b.head(me) = p.b_eq;
    }
    if (mu > 0) {
        t.a.block(me, 0, mu, nx) = p.a_ub;
        t.a.block(me, nx, mu, mu) = Eigen::MatrixXd::Identity(mu, mu);
        t.b.tail(mu) = p.b_ub;
    }
    for (int i = 0; i < m; ++i) {
        if (t.b(i) < 0) {
            t.a.row(i) = -t.a.row(i);
            t.b(i) = -t.b(i);
        }
        t.a(i, nx + mu + i) = 1.0;
        t.basis.push_back(nx + mu + i);
    }

    std::vector<bool> active(static_cast<std::size_t>(n), true);
    const long max_iter = 50L * (m + n) + 1000;
    LpResult res;

    // phase 1: drive the artificial variables to zero
    Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(n);
    for (int j = nx + mu; j < n; ++j) cost1(j) = 1.0;
    for (int i = 0; i < m; ++i) cost1 -= t.a.row(i).transpose();
    RunOutcome out = run_simplex(t, cost1, active, max_iter);
    if (out == RunOutcome::iteration_limit) {
        res.status = LpStatus::iteration_limit;
        return res;
    }
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i)
        if (t.basis[static_cast<std::size_t>(i)] >= nx + mu) art_sum += t.b(i);
    if (art_sum > 1e-7) {
        res.status = LpStatus::infeasible;
        return res;
    }
    for (int i = 0; i < m; ++i) {  // pivot leftover zero-level artificials out
        if (t.basis[static_cast<std::size_t>(i)] < nx + mu) continue;
        for (int j = 0; j < nx + mu; ++j)
            if (std::abs(t.a(i, j)) > kPivotTol) {
                t.pivot(i, j);
                break;
            }
    }
    for (int j = nx + mu; j < n; ++j) active[static_cast<std::size_t>(j)] = false;

    // phase 2
    Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(n);
    cost2.head(nx) = p.cost;
    for (int i = 0; i < m; ++i) {
        const int bj = t.basis[static_cast<std::size_t>(i)];
        const double f = cost2(bj);
        if (f != 0.0) cost2 -= f * t.a.row(i).transpose();
    }
    out = run_simplex(t, cost2, active, max_iter);
    if (out != RunOutcome::optimal) {
        res.status = (out == RunOutcome::unbounded) ? LpStatus::unbounded
                                                    : LpStatus::iteration_limit;
        return res;
    }

    res.status = LpStatus::optimal;
    res.x = Eigen::VectorXd::Zero(nx);
    for (int i = 0; i < m; ++i) {
        const int bj = t.basis[static_cast<std::size_t>(i)];
        if (bj < nx) res.x(bj) = t.b(i);
    }
    res.objective = p.cost.dot(res.x);
    return res;
}

}  // namespace qnet
