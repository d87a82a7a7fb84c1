#include "qnet/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qnet/nelder_mead.hpp"

namespace qnet {

ComplexMatrix unitary_from_angles(const std::vector<double>& params, int n) {
    const std::size_t need = static_cast<std::size_t>(n) * (n - 1) + static_cast<std::size_t>(n);
    if (params.size() < need)
        throw std::invalid_argument("unitary_from_angles: too few parameters");
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double th = params[k++], ph = params[k++];
            ComplexMatrix g = ComplexMatrix::Identity(n, n);
            const Complex eip = std::polar(1.0, ph);
            g(i, i) = std::cos(th);
            g(i, j) = -eip * std::sin(th);
            g(j, i) = std::conj(eip) * std::sin(th);
            g(j, j) = std::cos(th);
            u = u * g;
        }
    for (int i = 0; i < n; ++i) u.col(i) *= std::polar(1.0, params[k++]);
    return u;
}

double objective_value(const WitnessResult& w, const OptimizationConfig& cfg) {
    if (cfg.objective == Objective::min_of_pair) return std::min(w.fnn1, w.fnn2);
    return cfg.weight1 * w.fnn1 + cfg.weight2 * w.fnn2;
}

namespace {

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
    const std::uint64_t stream = static_cast<std::uint64_t>(restart) + 0x9e3779b9ULL;
    std::seed_seq seq{seed, stream};
    return std::mt19937_64(seq);
}

}  // namespace

OptimizationResult optimize_separable(double nu, const OptimizationConfig& cfg,
                                      const std::vector<AngleSet>& warm_starts) {
    if (cfg.restarts < 1) throw std::invalid_argument("optimize_separable: restarts >= 1 required");
    const double pi = std::numbers::pi;
    const QuantumState source = werner(nu);
    long evaluations = 0;
    auto eval = [&](const Eigen::VectorXd& v) {
        ++evaluations;
        std::array<double, 10> arr;
        for (int i = 0; i < 10; ++i) arr[static_cast<std::size_t>(i)] = v(i);
        Strategy s{source, source, AngleSet::from_array(arr), CentralConfig::feedback(0.5)};
        return -objective_value(fnn_values(behavior(s)), cfg);
    };
    NmOptions nm;
    nm.max_iter = cfg.max_iterations;
    nm.xatol = cfg.convergence_tol;
    nm.fatol = cfg.convergence_tol * 1e-2;
    nm.initial_step = cfg.simplex_scale;

    OptimizationResult out;
    out.best_value = -1e300;
    auto consider = [&](const NmResult& r) {
        if (-r.value > out.best_value) {
            out.best_value = -r.value;
            std::array<double, 10> arr;
            for (int i = 0; i < 10; ++i) arr[static_cast<std::size_t>(i)] = r.x(i);
            out.best_angles = AngleSet::from_array(arr);
        }
        out.trace.push_back(-r.value);
    };

    for (const AngleSet& w : warm_starts) {
        Eigen::VectorXd x0(10);
        auto arr = w.to_array();
        for (int i = 0; i < 10; ++i) x0(i) = arr[static_cast<std::size_t>(i)];
        consider(nelder_mead(eval, x0, nm));
    }
    for (int r = 0; r < cfg.restarts; ++r) {
        auto rng = restart_rng(cfg.seed, r);
        std::uniform_real_distribution<double> uni(0.0, pi);
        Eigen::VectorXd x0(10);
        for (int i = 0; i < 10; ++i) x0(i) = uni(rng);
        consider(nelder_mead(eval, x0, nm));
    }
    out.evaluations = evaluations;
    return out;
}

ThresholdResult noise_threshold(const OptimizationConfig& cfg) {
    OptimizationConfig probe_cfg = cfg;
    probe_cfg.restarts = std::max(6, cfg.restarts / 8);

    ThresholdResult res;
    double lo = 0.0, hi = 0.12;
    OptimizationResult at_zero = optimize_separable(0.0, probe_cfg,
                                                    {optimal_separable_angles()});
    std::vector<AngleSet> warm{at_zero.best_angles, optimal_separable_angles()};
    // ensure the bracket: value at hi must not violate
    OptimizationResult at_hi = optimize_separable(hi, probe_cfg, warm);
    while (at_hi.best_value > 1.0 && hi < 1.0) {
        hi = std::min(1.0, hi * 2.0);
        at_hi = optimize_separable(hi, probe_cfg, warm);
    }
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        OptimizationResult r = optimize_separable(mid, probe_cfg, warm);
        res.probe_values.push_back(r.best_value);
        if (r.best_value > 1.0) {
            lo = mid;
            warm = {r.best_angles, optimal_separable_angles()};
        } else {
            hi = mid;
        }
    }
    res.nu_low = lo;
    res.nu_high = hi;
    res.nu_star = 0.5 * (lo + hi);
    return res;
}

namespace {

Povm central_from_params(const std::vector<double>& q) {
    // 16 unitary parameters (two-level rotations + phases) and 4 bounded
    // eigenvalues d = (1 + sin(q))/2
    std::vector<double> uq(q.begin(), q.begin() + 16);
    ComplexMatrix u = unitary_from_angles(uq, 4);
    Eigen::Vector4d d;
    for (int i = 0; i < 4; ++i) d(i) = 0.5 * (1.0 + std::sin(q[static_cast<std::size_t>(16 + i)]));
    ComplexMatrix pi0 = u * d.cast<Complex>().asDiagonal() * u.adjoint();
    Povm p;
    p.dim = 4;
    p.elements = {pi0, ComplexMatrix::Identity(4, 4) - pi0};
    p.labels = {"0", "1"};
    return p;
}

}  // namespace

OptimizationResult optimize_entangled(double nu, const OptimizationConfig& cfg) {
    const double pi = std::numbers::pi;
    const QuantumState src = werner(nu);
    NmOptions nm_outer, nm_central;
    nm_outer.max_iter = cfg.max_iterations / 2;
    nm_central.max_iter = cfg.max_iterations;
    nm_outer.initial_step = cfg.simplex_scale;
    nm_central.initial_step = cfg.simplex_scale;

    long evaluations = 0;
    auto value_of = [&](const std::array<double, 4>& outer, const Povm& central) {
        AngleSet a;
        a.a1 = outer[0]; a.a2 = outer[1]; a.c1 = outer[2]; a.c2 = outer[3];
        Strategy s{src, src, a, CentralConfig::explicit_binary(central)};
        return objective_value(fnn_values(behavior(s)), cfg);
    };

    OptimizationResult out;
    out.best_value = -1e300;
    const int restarts = std::max(1, cfg.restarts / 8);
    for (int r = 0; r < restarts; ++r) {
        auto rng = restart_rng(cfg.seed, r);
        std::uniform_real_distribution<double> uni(0.0, pi);
        std::normal_distribution<double> gau(0.0, 1.0);
        std::array<double, 4> outer;
        for (double& v : outer) v = uni(rng);
        std::vector<double> q(20);
        for (double& v : q) v = gau(rng);

        double current = -1e300;
        std::vector<double> round_values;
        for (int round = 0; round < cfg.seesaw_rounds; ++round) {
            // (i) outer angles with the central POVM fixed
            Povm central = central_from_params(q);
            auto fo = [&](const Eigen::VectorXd& v) {
                ++evaluations;
                return -value_of({v(0), v(1), v(2), v(3)}, central);
            };
            Eigen::VectorXd xo(4);
            for (int i = 0; i < 4; ++i) xo(i) = outer[static_cast<std::size_t>(i)];
            NmResult ro = nelder_mead(fo, xo, nm_outer);
            for (int i = 0; i < 4; ++i) outer[static_cast<std::size_t>(i)] = ro.x(i);

            // (ii) central POVM with outer measurements fixed
            auto fc = [&](const Eigen::VectorXd& v) {
                ++evaluations;
                std::vector<double> qq(20);
                for (int i = 0; i < 20; ++i) qq[static_cast<std::size_t>(i)] = v(i);
                return -value_of(outer, central_from_params(qq));
            };
            Eigen::VectorXd xc(20);
            for (int i = 0; i < 20; ++i) xc(i) = q[static_cast<std::size_t>(i)];
            NmResult rc = nelder_mead(fc, xc, nm_central);
            for (int i = 0; i < 20; ++i) q[static_cast<std::size_t>(i)] = rc.x(i);

            const double val = -rc.value;
            round_values.push_back(val);
            if (val < current + cfg.convergence_tol * 10 && round > 1) {
                current = std::max(current, val);
                break;
            }
            current = std::max(current, val);
        }
        out.trace.push_back(current);
        out.seesaw_rounds.push_back(round_values);
        if (current > out.best_value) {
            out.best_value = current;
            out.best_central = central_from_params(q);
            AngleSet a;
            a.a1 = outer[0]; a.a2 = outer[1]; a.c1 = outer[2]; a.c2 = outer[3];
            out.best_angles = a;
        }
    }
    out.evaluations = evaluations;
    return out;
}

std::vector<SweepRow> sweep_fnn(const std::vector<double>& nu_grid, SweepMode mode,
                                const OptimizationConfig& cfg) {
    std::vector<SweepRow> rows;
    std::vector<AngleSet> warm{optimal_separable_angles()};
    for (double nu : nu_grid) {
        if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("sweep_fnn: nu outside [0,1]");
        SweepRow row;
        row.nu = nu;
        if (mode == SweepMode::separable_fixed_angles) {
            Strategy s{werner(nu), werner(nu), optimal_separable_angles(),
                       CentralConfig::feedback(0.5)};
            WitnessResult w = fnn_values(behavior(s));
            row.fnn1 = w.fnn1;
            row.fnn2 = w.fnn2;
        } else if (mode == SweepMode::separable_reopt) {
            OptimizationConfig probe = cfg;
            probe.restarts = std::max(4, cfg.restarts / 8);
            OptimizationResult r = optimize_separable(nu, probe, warm);
            warm = {r.best_angles, optimal_separable_angles()};
            Strategy s{werner(nu), werner(nu), r.best_angles, CentralConfig::feedback(0.5)};
            WitnessResult w = fnn_values(behavior(s));
            row.fnn1 = w.fnn1;
            row.fnn2 = w.fnn2;
        } else {
            OptimizationResult r = optimize_entangled(nu, cfg);
            Strategy s{werner(nu), werner(nu), r.best_angles,
                       CentralConfig::explicit_binary(r.best_central)};
            WitnessResult w = fnn_values(behavior(s));
            row.fnn1 = w.fnn1;
            row.fnn2 = w.fnn2;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qnet
