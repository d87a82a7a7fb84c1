#include "invariant_suites.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qnet/attack.hpp"
#include "qnet/classifier.hpp"
#include "qnet/optimizer.hpp"

namespace qnet::testing {

namespace {

using Clock = std::chrono::steady_clock;
const double pi = std::numbers::pi;

struct Runner {
    std::vector<InvariantReport> reports;
    bool quick = false;

    template <typename F>
    void group(const std::string& name, F&& body) {
        InvariantReport rep;
        rep.name = name;
        const auto t0 = Clock::now();
        std::ostringstream detail;
        try {
            rep.pass = body(detail);
        } catch (const std::exception& e) {
            rep.pass = false;
            detail << "exception: " << e.what();
        }
        rep.detail = detail.str();
        rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        reports.push_back(std::move(rep));
    }
};

AngleSet random_angles(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, pi);
    std::array<double, 10> v;
    for (double& w : v) w = uni(rng);
    return AngleSet::from_array(v);
}

}  // namespace

std::vector<InvariantReport> run_invariant_suites(bool quick) {
    Runner r;
    r.quick = quick;
    const int n_oneway = quick ? 10 : 200;
    const int n_mono = quick ? 8 : 50;
    const int n_oracle = quick ? 10 : 50;
    const int n_mirror = quick ? 4 : 20;

    // ---- qstate ----
    r.group("qstate: projector idempotent, unit trace", [&](std::ostringstream& d) {
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> uni(-8.0, 8.0);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            ComplexMatrix p = projector(uni(rng));
            worst = std::max(worst, max_abs(p * p - p));
            worst = std::max(worst, std::abs(p.trace().real() - 1.0));
        }
        d << "max deviation " << worst;
        return worst < 1e-12;
    });
    r.group("qstate: werner spectrum", [&](std::ostringstream& d) {
        std::mt19937_64 rng(102);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double nu = uni(rng);
            RealVector e = hermitian_eigenvalues(werner(nu).matrix());
            worst = std::max(worst, std::abs(e(3) - (1.0 - 0.75 * nu)));
            for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(e(i) - 0.25 * nu));
        }
        d << "max deviation " << worst;
        return worst < 1e-10;
    });
    r.group("qstate: purification round trip", [&](std::ostringstream& d) {
        std::mt19937_64 rng(103);
        std::normal_distribution<double> g(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            ComplexMatrix mmat(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) mmat(i, j) = Complex(g(rng), g(rng));
            ComplexMatrix rho = mmat * mmat.adjoint();
            rho /= rho.trace().real();
            QuantumState st(rho);
            worst = std::max(worst, max_abs(partial_trace_right(purify(st).matrix(), 4) - rho));
        }
        d << "max round-trip error " << worst;
        return worst < 1e-9;
    });
    r.group("qstate: constructor POVMs validate", [&](std::ostringstream& d) {
        std::mt19937_64 rng(104);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int k = 0; k < 100; ++k) {
            AngleSet a = random_angles(rng);
            if (!validate_povm(feedback_povm_fine(a, uni(rng))).ok(1e-9)) return false;
            Povm c = feedback_povm_coarse(a, CentralConfig::feedback(uni(rng), uni(rng), uni(rng)));
            if (!validate_povm(c).ok(1e-9)) return false;
        }
        d << "100 draws";
        return true;
    });

    // ---- bilocal ----
    r.group("bilocal: fine POVM completeness", [&](std::ostringstream& d) {
        std::mt19937_64 rng(105);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            Povm f = feedback_povm_fine(random_angles(rng), uni(rng));
            ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
            for (const auto& el : f.elements) sum += el;
            worst = std::max(worst, max_abs(sum - ComplexMatrix::Identity(4, 4)));
        }
        d << "max completeness deviation " << worst;
        return worst < 1e-12;
    });
    r.group("bilocal: coarse equals coarse-grained fine at alpha=1", [&](std::ostringstream& d) {
        std::mt19937_64 rng(106);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            AngleSet a = random_angles(rng);
            const double p = uni(rng);
            Povm coarse = feedback_povm_coarse(a, CentralConfig::feedback(p, 1.0, 1.0));
            Povm fine = feedback_povm_fine(a, p);
            worst = std::max(worst, max_abs(coarse.elements[0] - fine.elements[0] - fine.elements[3]));
            worst = std::max(worst, max_abs(coarse.elements[1] - fine.elements[1] - fine.elements[2]));
        }
        d << "max deviation " << worst;
        return worst < 1e-12;
    });
    r.group("bilocal: behavior normalization and no-signaling", [&](std::ostringstream& d) {
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            Behavior b = behavior(oracle::random_strategy(3000 + static_cast<std::uint64_t>(k)));
            worst = std::max({worst, b.normalization_deviation(), b.nosignaling_deviation()});
            if (b.min_entry() < -1e-12) return false;
        }
        d << "max deviation " << worst;
        return worst < 1e-9;
    });
    r.group("bilocal: noise monotonically flattens the behavior", [&](std::ostringstream& d) {
        std::mt19937_64 rng(107);
        AngleSet a = random_angles(rng);
        double prev = 1e300;
        for (int k = 0; k <= 20; ++k) {
            const double nu = k / 20.0;
            Behavior b = behavior(Strategy{werner(nu), werner(nu), a, CentralConfig::feedback(0.5)});
            double dist = 0.0;
            for (int x = 0; x < 2; ++x)
                for (int z = 0; z < 2; ++z)
                    for (int aa = 0; aa < 2; ++aa)
                        for (int bb = 0; bb < 2; ++bb)
                            for (int cc = 0; cc < 2; ++cc)
                                dist = std::max(dist, std::abs(b.at(x, z, aa, bb, cc) - 0.125));
            if (dist > prev + 1e-12) return false;
            prev = dist;
        }
        d << "20 grid points";
        return true;
    });

    // ---- witness ----
    r.group("witness: correlators bounded, |FNN| <= 5", [&](std::ostringstream& d) {
        for (int k = 0; k < 300; ++k) {
            Behavior b = behavior(oracle::random_strategy(4000 + static_cast<std::uint64_t>(k)));
            CorrelatorSet c = correlators(b);
            for (int x = 0; x < 2; ++x)
                for (int z = 0; z < 2; ++z)
                    if (std::abs(c.tri[x][z]) > 1.0 + 1e-9) return false;
            for (int s = 0; s < 2; ++s)
                if (std::abs(c.ab[s]) > 1.0 + 1e-9 || std::abs(c.bc[s]) > 1.0 + 1e-9 ||
                    std::abs(c.a[s]) > 1.0 + 1e-9 || std::abs(c.c[s]) > 1.0 + 1e-9)
                    return false;
            if (std::abs(c.b) > 1.0 + 1e-9) return false;
            WitnessResult w = fnn_values(b);
            if (std::abs(w.fnn1) > 5.0 || std::abs(w.fnn2) > 5.0) return false;
        }
        d << "300 behaviors";
        return true;
    });
    r.group("witness: agrees with the expanded-entry oracle", [&](std::ostringstream& d) {
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            Behavior b = behavior(oracle::random_strategy(5000 + static_cast<std::uint64_t>(k)));
            WitnessResult w = fnn_values(b);
            auto [f1, f2] = oracle::fnn_direct(b);
            worst = std::max({worst, std::abs(w.fnn1 - f1), std::abs(w.fnn2 - f2)});
        }
        d << "max deviation " << worst;
        return worst < 1e-12;
    });
    r.group("witness: one-way strategies stay one-side-local", [&](std::ostringstream& d) {
        std::mt19937_64 rng(108);
        std::uniform_real_distribution<double> unoise(0.0, 0.6);
        double worst_dev = 0.0, worst_t = 1.0;
        for (int k = 0; k < n_oneway; ++k) {
            const double p = k % 2 == 0 ? 1.0 : 0.0;
            const double nu = k % 4 < 2 ? 0.0 : unoise(rng);
            Strategy s{werner(nu), werner(nu), random_angles(rng), CentralConfig::feedback(p, 1.0, 1.0)};
            FactorizationReport rep = check_oneway_factorization(s);
            worst_dev = std::max(worst_dev, rep.max_deviation);
            if (rep.max_deviation > 1e-9) return false;
            Behavior b = behavior(s);
            const LocalVariant v = p == 1.0 ? LocalVariant::left : LocalVariant::right;
            double t = feasibility(b, 1.0, v).feasible ? 1.0 : robustness(b, v);
            worst_t = std::min(worst_t, t);
            if (t < 1.0 - 5e-3) {
                d << "strategy " << k << " robustness " << t;
                return false;
            }
        }
        d << n_oneway << " draws, max factorization dev " << worst_dev << ", min t " << worst_t;
        return true;
    });

    // ---- optimizer ----
    r.group("optimizer: determinism under a fixed seed", [&](std::ostringstream& d) {
        OptimizationConfig cfg;
        cfg.restarts = 2;
        cfg.max_iterations = 300;
        cfg.seed = 77;
        OptimizationResult a = optimize_separable(0.08, cfg);
        OptimizationResult b = optimize_separable(0.08, cfg);
        d << "best " << a.best_value;
        return a.best_value == b.best_value && a.trace == b.trace;
    });
    r.group("optimizer: restart count only improves the best", [&](std::ostringstream& d) {
        OptimizationConfig s1, s2;
        s1.restarts = 2;
        s2.restarts = 4;
        s1.seed = s2.seed = 9;
        s1.max_iterations = s2.max_iterations = 300;
        OptimizationResult a = optimize_separable(0.05, s1);
        OptimizationResult b = optimize_separable(0.05, s2);
        d << a.best_value << " -> " << b.best_value;
        return b.best_value >= a.best_value && std::equal(a.trace.begin(), a.trace.end(), b.trace.begin());
    });
    r.group("optimizer: best value re-evaluates within 1e-9", [&](std::ostringstream& d) {
        OptimizationConfig cfg;
        cfg.restarts = 2;
        cfg.max_iterations = 500;
        OptimizationResult res = optimize_separable(0.03, cfg, {optimal_separable_angles()});
        Strategy s{werner(0.03), werner(0.03), res.best_angles, CentralConfig::feedback(0.5)};
        const double again = objective_value(fnn_values(behavior(s)), cfg);
        d << "difference " << std::abs(again - res.best_value);
        return std::abs(again - res.best_value) < 1e-9;
    });
    r.group("optimizer: see-saw rounds are monotone", [&](std::ostringstream& d) {
        OptimizationConfig cfg;
        cfg.restarts = 8;
        cfg.seed = 23;
        cfg.max_iterations = 500;
        cfg.seesaw_rounds = 5;
        OptimizationResult res = optimize_entangled(0.1, cfg);
        for (const auto& rounds : res.seesaw_rounds)
            for (std::size_t i = 1; i < rounds.size(); ++i)
                if (rounds[i] < rounds[i - 1] - 1e-9) return false;
        d << res.seesaw_rounds.size() << " restarts";
        return true;
    });

    // ---- classifier ----
    r.group("classifier: feasibility is monotone in t", [&](std::ostringstream& d) {
        int tested = 0;
        for (int k = 0; k < n_mono; ++k) {
            Behavior b = behavior(oracle::random_strategy(6000 + static_cast<std::uint64_t>(k)));
            for (LocalVariant v : {LocalVariant::full, LocalVariant::left, LocalVariant::right}) {
                for (double t : {1.0, 0.9}) {
                    FeasibilityResult f = feasibility(b, t, v);
                    if (f.feasible) {
                        FeasibilityResult lower = feasibility(b, t - 0.05, v);
                        ++tested;
                        if (!lower.feasible) {
                            d << "variant " << to_string(v) << " t=" << t << " residual "
                              << lower.residual;
                            return false;
                        }
                        break;
                    }
                }
            }
        }
        d << tested << " monotonicity checks";
        return true;
    });
    r.group("classifier: see-saw matches the enumeration oracle at t=1",
            [&](std::ostringstream& d) {
                int agree = 0;
                for (int k = 0; k < n_oracle; ++k) {
                    Behavior b =
                        behavior(oracle::random_strategy(2200 + static_cast<std::uint64_t>(k)));
                    const bool impl = feasibility(b, 1.0, LocalVariant::full).feasible;
                    const bool orac = oracle::full_local_oracle(b, 1.0).feasible;
                    if (impl != orac) {
                        d << "disagreement at draw " << k << " impl=" << impl << " oracle=" << orac;
                        return false;
                    }
                    ++agree;
                }
                d << agree << " agreements, 0 disagreements";
                return true;
            });
    r.group("classifier: mirror symmetry and the full-vs-sided bound", [&](std::ostringstream& d) {
        for (int k = 0; k < n_mirror; ++k) {
            Behavior b = behavior(oracle::random_strategy(600 + static_cast<std::uint64_t>(k)));
            Behavior m;
            for (int x = 0; x < 2; ++x)
                for (int z = 0; z < 2; ++z)
                    for (int a = 0; a < 2; ++a)
                        for (int bb = 0; bb < 2; ++bb)
                            for (int c = 0; c < 2; ++c) m.at(x, z, a, bb, c) = b.at(z, x, c, bb, a);
            RobustnessResult rb = classify(b);
            RobustnessResult rm = classify(m);
            if (rb.t_full > std::min(rb.t_left, rb.t_right) + 5e-3) return false;
            if (std::abs(rb.t_left - rm.t_right) > 5e-3 ||
                std::abs(rb.t_right - rm.t_left) > 5e-3 || std::abs(rb.t_full - rm.t_full) > 5e-3) {
                d << "draw " << k << " asymmetric robustness";
                return false;
            }
            Label expect = rb.label == Label::LeftLocalOnly    ? Label::RightLocalOnly
                           : rb.label == Label::RightLocalOnly ? Label::LeftLocalOnly
                                                               : rb.label;
            if (rm.label != expect) {
                d << "draw " << k << " label " << to_string(rm.label) << " vs "
                  << to_string(expect);
                return false;
            }
        }
        d << n_mirror << " mirrored strategies";
        return true;
    });

    // ---- attack ----
    r.group("attack: joint tables marginalize to the honest behavior", [&](std::ostringstream& d) {
        Strategy s{werner(0.45), werner(0.45), optimal_separable_angles(),
                   CentralConfig::feedback(0.5)};
        AttackModel m = build_attack_model(s, AttackScenario::SE);
        Behavior honest = behavior(s);
        double worst = 0.0;
        for (int x = 0; x < 2; ++x)
            for (int z = 0; z < 2; ++z) {
                EveMeasurement eve = aligned_purification_attack(m, AttackTarget::AC, x, z);
                JointTable jt = behavior_with_eavesdroppers(s, m.sources, eve, x, z);
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c) {
                            double sum = 0.0;
                            for (int e = 0; e < 4; ++e) sum += jt.at(a, b, c, e);
                            worst = std::max(worst, std::abs(sum - honest.at(x, z, a, b, c)));
                        }
            }
        d << "max marginal deviation " << worst;
        return worst < 1e-9;
    });
    r.group("attack: SE dominates DE", [&](std::ostringstream& d) {
        OptimizationConfig cfg;
        cfg.restarts = 16;
        cfg.max_iterations = 300;
        for (double nu : {0.3, 1.0}) {
            Strategy s{werner(nu), werner(nu), optimal_separable_angles(),
                       CentralConfig::feedback(0.5)};
            AttackResult se = optimize_attack(build_attack_model(s, AttackScenario::SE),
                                              AttackTarget::AC, 0, 1, cfg);
            AttackResult de = optimize_attack(build_attack_model(s, AttackScenario::DE),
                                              AttackTarget::AC, 0, 1, cfg);
            if (se.pg_lower_bound < de.pg_lower_bound - 1e-9) {
                d << "nu=" << nu << " SE " << se.pg_lower_bound << " < DE " << de.pg_lower_bound;
                return false;
            }
        }
        d << "2 noise points";
        return true;
    });
    r.group("attack: bounds stay within [blind floor, 1]", [&](std::ostringstream& d) {
        OptimizationConfig cfg;
        cfg.restarts = 16;
        cfg.max_iterations = 300;
        Strategy s{werner(0.6), werner(0.6), optimal_separable_angles(),
                   CentralConfig::feedback(0.5)};
        Behavior honest = behavior(s);
        AttackModel m = build_attack_model(s, AttackScenario::DE);
        AttackResult res = optimize_attack(m, AttackTarget::AC, 1, 1, cfg);
        double floor = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c)
                floor = std::max(floor, honest.marginal_a(1, a) * honest.marginal_c(1, c));
        d << "pg " << res.pg_lower_bound << ", floor " << floor;
        return res.pg_lower_bound >= std::max(floor, 0.25) - 1e-9 &&
               res.pg_lower_bound <= 1.0 + 1e-12 &&
               std::abs(res.hmin_upper_bound + std::log2(res.pg_lower_bound)) < 1e-12;
    });

    return r.reports;
}

}  // namespace qnet::testing
