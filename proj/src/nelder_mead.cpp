#include "qnet/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace qnet {

NmResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                     const Eigen::VectorXd& x0, const NmOptions& opt) {
    const int n = static_cast<int>(x0.size());
    std::vector<Eigen::VectorXd> pts;
    std::vector<double> vals;
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return f(x);
    };

    pts.push_back(x0);
    vals.push_back(eval(x0));
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd x = x0;
        x(i) += (x(i) != 0.0 ? opt.initial_step * std::abs(x(i)) + opt.initial_step
                             : opt.initial_step);
        pts.push_back(x);
        vals.push_back(eval(x));
    }

    std::vector<int> order(static_cast<std::size_t>(n + 1));
    std::iota(order.begin(), order.end(), 0);
    auto sort_simplex = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](int i, int j) { return vals[static_cast<std::size_t>(i)] <
                                                    vals[static_cast<std::size_t>(j)]; });
    };

    constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        sort_simplex();
        const int best = order[0], worst = order[static_cast<std::size_t>(n)];
        const int second_worst = order[static_cast<std::size_t>(n - 1)];

        double spread_f = std::abs(vals[static_cast<std::size_t>(worst)] -
                                   vals[static_cast<std::size_t>(best)]);
        double spread_x = 0.0;
        for (int i = 1; i <= n; ++i)
            spread_x = std::max(spread_x, (pts[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] -
                                           pts[static_cast<std::size_t>(best)])
                                              .cwiseAbs()
                                              .maxCoeff());
        if (spread_f < opt.fatol && spread_x < opt.xatol) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += pts[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        centroid /= n;

        Eigen::VectorXd xr = centroid + alpha * (centroid - pts[static_cast<std::size_t>(worst)]);
        double fr = eval(xr);
        if (fr < vals[static_cast<std::size_t>(best)]) {
            Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
            double fe = eval(xe);
            if (fe < fr) {
                pts[static_cast<std::size_t>(worst)] = xe;
                vals[static_cast<std::size_t>(worst)] = fe;
            } else {
                pts[static_cast<std::size_t>(worst)] = xr;
                vals[static_cast<std::size_t>(worst)] = fr;
            }
        } else if (fr < vals[static_cast<std::size_t>(second_worst)]) {
            pts[static_cast<std::size_t>(worst)] = xr;
            vals[static_cast<std::size_t>(worst)] = fr;
        } else {
            Eigen::VectorXd xc = centroid + rho * (pts[static_cast<std::size_t>(worst)] - centroid);
            double fc = eval(xc);
            if (fc < vals[static_cast<std::size_t>(worst)]) {
                pts[static_cast<std::size_t>(worst)] = xc;
                vals[static_cast<std::size_t>(worst)] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    const int k = order[static_cast<std::size_t>(i)];
                    pts[static_cast<std::size_t>(k)] =
                        pts[static_cast<std::size_t>(best)] +
                        sigma * (pts[static_cast<std::size_t>(k)] - pts[static_cast<std::size_t>(best)]);
                    vals[static_cast<std::size_t>(k)] = eval(pts[static_cast<std::size_t>(k)]);
                }
            }
        }
    }
    sort_simplex();
    NmResult r;
    r.x = pts[static_cast<std::size_t>(order[0])];
    r.value = vals[static_cast<std::size_t>(order[0])];
    r.evaluations = evals;
    return r;
}

}  // namespace qnet
