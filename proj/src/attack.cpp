#include "qnet/attack.hpp"

#include <cmath>
#include <random>

#include "qnet/nelder_mead.hpp"

namespace qnet {

std::string to_string(AttackScenario s) { return s == AttackScenario::SE ? "SE" : "DE"; }
std::string to_string(AttackTarget t) { return t == AttackTarget::AC ? "AC" : "ABC"; }

AttackModel build_attack_model(const Strategy& s, AttackScenario scenario) {
    auto fit_nu = [](const QuantumState& rho) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
        const double nu = 4.0 * (1.0 - es.eigenvalues().maxCoeff()) / 3.0;
        const double clipped = std::clamp(nu, 0.0, 1.0);
        if (max_abs(rho.matrix() - werner(clipped).matrix()) > 1e-8)
            throw std::invalid_argument("build_attack_model: non-Werner sources unsupported");
        return clipped;
    };
    const double nu1 = fit_nu(s.rho1);
    const double nu2 = fit_nu(s.rho2);
    AttackModel m;
    m.scenario = scenario;
    m.honest = s;
    m.sources = purify_sources(s);
    m.nu = 0.5 * (nu1 + nu2);
    return m;
}

namespace {

int outcome_count_left(AttackScenario sc, AttackTarget t) {
    if (sc == AttackScenario::SE) return 4;          // joint (a,c) guess
    return t == AttackTarget::AC ? 2 : 4;            // DE: a or (a,b) guess on E0
}

int outcome_count_right(AttackScenario sc, AttackTarget /*t*/) {
    return sc == AttackScenario::SE ? 1 : 2;         // DE: c guess on E1
}

}  // namespace

EveMeasurement blind_guess(AttackScenario scenario, AttackTarget target, int guess_e, int guess_f) {
    EveMeasurement eve;
    if (scenario == AttackScenario::SE) {
        eve.kind = EveMeasurement::Kind::joint;
        for (int e = 0; e < 4; ++e)
            eve.joint_elements.push_back(e == guess_e
                                             ? ComplexMatrix(ComplexMatrix::Identity(16, 16))
                                             : ComplexMatrix(ComplexMatrix::Zero(16, 16)));
    } else {
        eve.kind = EveMeasurement::Kind::product;
        const int ne = outcome_count_left(scenario, target);
        for (int e = 0; e < ne; ++e)
            eve.left_elements.push_back(e == guess_e
                                            ? ComplexMatrix(ComplexMatrix::Identity(4, 4))
                                            : ComplexMatrix(ComplexMatrix::Zero(4, 4)));
        for (int f = 0; f < 2; ++f)
            eve.right_elements.push_back(f == guess_f
                                             ? ComplexMatrix(ComplexMatrix::Identity(4, 4))
                                             : ComplexMatrix(ComplexMatrix::Zero(4, 4)));
    }
    return eve;
}

EveMeasurement aligned_purification_attack(const AttackModel& m, AttackTarget target,
                                           int x, int z) {
    // Mirror the outer projectors on the purifying registers: for the
    // purification psi = sqrt(rho), measuring conj(M) on the ancilla
    // correlates with the honest outcome of M.
    const double ax = x == 0 ? m.honest.angles.a1 : m.honest.angles.a2;
    const double cz = z == 0 ? m.honest.angles.c1 : m.honest.angles.c2;
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    std::vector<ComplexMatrix> g(2), h(2);
    for (int o = 0; o < 2; ++o) {
        g[static_cast<std::size_t>(o)] = tensor(outer_element(ax, o), i2).conjugate();
        h[static_cast<std::size_t>(o)] = tensor(i2, outer_element(cz, o)).conjugate();
    }
    EveMeasurement eve;
    if (m.scenario == AttackScenario::SE) {
        eve.kind = EveMeasurement::Kind::joint;
        eve.joint_elements.resize(4);
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c)
                eve.joint_elements[static_cast<std::size_t>(2 * a + c)] =
                    tensor(g[static_cast<std::size_t>(a)], h[static_cast<std::size_t>(c)]);
    } else {
        eve.kind = EveMeasurement::Kind::product;
        if (target == AttackTarget::AC) {
            eve.left_elements = {g[0], g[1]};
        } else {
            // guess (a, b) with the mirrored a-projector and a fixed b guess
            eve.left_elements = {g[0], ComplexMatrix::Zero(4, 4), g[1],
                                 ComplexMatrix::Zero(4, 4)};
        }
        eve.right_elements = {h[0], h[1]};
    }
    return eve;
}

double guessing_probability(const AttackModel& m, AttackTarget target, int x, int z,
                            const EveMeasurement& eve) {
    const JointTable jt = behavior_with_eavesdroppers(m.honest, m.sources, eve, x, z);
    double pg = 0.0;
    if (m.scenario == AttackScenario::SE) {
        if (jt.ne != 4 || jt.nf != 1)
            throw std::invalid_argument("guessing_probability: SE needs a 4-outcome joint POVM");
        // e = (a,c); for the ABC target b comes from the classical copy, so
        // the printed sums coincide.
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) pg += jt.at(a, b, c, 2 * a + c);
    } else {
        const int ne = outcome_count_left(m.scenario, target);
        const int nf = outcome_count_right(m.scenario, target);
        if (jt.ne != ne || jt.nf != nf)
            throw std::invalid_argument("guessing_probability: outcome count mismatch");
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    const int e = target == AttackTarget::AC ? a : 2 * a + b;
                    pg += jt.at(a, b, c, e * nf + c);
                }
    }
    return pg;
}

namespace {

// rank patterns: binary POVM on dim 4 uses ranks (2,2); four-outcome uses
// rank-1 elements
std::vector<ComplexMatrix> povm_from_chart(const std::vector<double>& params, int outcomes) {
    ComplexMatrix u = unitary_from_angles(params, 4);
    std::vector<ComplexMatrix> els;
    if (outcomes == 2) {
        ComplexMatrix d = ComplexMatrix::Zero(4, 4);
        d(0, 0) = 1.0;
        d(1, 1) = 1.0;
        ComplexMatrix e0 = u * d * u.adjoint();
        els = {e0, ComplexMatrix::Identity(4, 4) - e0};
    } else {
        for (int k = 0; k < 4; ++k) {
            ComplexMatrix d = ComplexMatrix::Zero(4, 4);
            d(k, k) = 1.0;
            els.push_back(u * d * u.adjoint());
        }
    }
    return els;
}

// fixed coordinate pairs for the joint entangling layer on (E0,E1)
constexpr int kJointPairs[8][2] = {{1, 4},  {2, 8},  {3, 12}, {6, 9},
                                   {7, 13}, {11, 14}, {5, 10}, {0, 15}};

ComplexMatrix joint_rotation(const std::vector<double>& params, std::size_t offset) {
    ComplexMatrix r = ComplexMatrix::Identity(16, 16);
    for (int k = 0; k < 8; ++k) {
        const double th = params[offset + 2 * static_cast<std::size_t>(k)];
        const double ph = params[offset + 2 * static_cast<std::size_t>(k) + 1];
        ComplexMatrix g = ComplexMatrix::Identity(16, 16);
        const Complex eip = std::polar(1.0, ph);
        const int i = kJointPairs[k][0], j = kJointPairs[k][1];
        g(i, i) = std::cos(th);
        g(i, j) = -eip * std::sin(th);
        g(j, i) = std::conj(eip) * std::sin(th);
        g(j, j) = std::cos(th);
        r = r * g;
    }
    return r;
}

EveMeasurement chart_measurement(AttackScenario sc, AttackTarget target,
                                 const std::vector<double>& params) {
    const int ne = outcome_count_left(sc, target);
    std::vector<double> left(params.begin(), params.begin() + 16);
    std::vector<double> right(params.begin() + 16, params.begin() + 32);
    std::vector<ComplexMatrix> g = povm_from_chart(left, sc == AttackScenario::SE ? 2 : ne);
    std::vector<ComplexMatrix> h = povm_from_chart(right, 2);
    EveMeasurement eve;
    if (sc == AttackScenario::SE) {
        eve.kind = EveMeasurement::Kind::joint;
        ComplexMatrix r = joint_rotation(params, 32);
        eve.joint_elements.resize(4);
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c)
                eve.joint_elements[static_cast<std::size_t>(2 * a + c)] =
                    r *
                    tensor(g[static_cast<std::size_t>(a)], h[static_cast<std::size_t>(c)]) *
                    r.adjoint();
    } else {
        eve.kind = EveMeasurement::Kind::product;
        eve.left_elements = g;
        eve.right_elements = h;
    }
    return eve;
}

constexpr std::size_t kChartParams = 48;  // 16 + 16 unitaries, 16 joint layer

}  // namespace

AttackResult optimize_attack(const AttackModel& m, AttackTarget target, int x, int z,
                             const OptimizationConfig& cfg) {
    AttackResult out;
    out.scenario = m.scenario;
    out.target = target;
    out.x = x;
    out.z = z;
    out.pg_lower_bound = 0.0;

    auto consider = [&](double pg, const EveMeasurement& eve) {
        out.trace.push_back(pg);
        if (pg > out.pg_lower_bound) {
            out.pg_lower_bound = pg;
            out.best_measurement = eve;
        }
    };

    // structured candidates: blind guesses and the purification mirror
    const int ne = outcome_count_left(m.scenario, target);
    const int nf = outcome_count_right(m.scenario, target);
    for (int e = 0; e < ne; ++e)
        for (int f = 0; f < nf; ++f) {
            EveMeasurement eve = blind_guess(m.scenario, target, e, f);
            consider(guessing_probability(m, target, x, z, eve), eve);
        }
    {
        EveMeasurement eve = aligned_purification_attack(m, target, x, z);
        consider(guessing_probability(m, target, x, z, eve), eve);
    }
    if (m.scenario == AttackScenario::SE) {
        // the strong eavesdropper dominates the double one: embed the best
        // product attack found under the DE restriction
        AttackModel de = m;
        de.scenario = AttackScenario::DE;
        AttackResult der = optimize_attack(de, target, x, z, cfg);
        const EveMeasurement& best = der.best_measurement;
        if (best.kind == EveMeasurement::Kind::product && !best.left_elements.empty()) {
            EveMeasurement joint;
            joint.kind = EveMeasurement::Kind::joint;
            joint.joint_elements.resize(4);
            for (int a = 0; a < 2; ++a) {
                ComplexMatrix ga = target == AttackTarget::AC
                                       ? best.left_elements[static_cast<std::size_t>(a)]
                                       : ComplexMatrix(best.left_elements[static_cast<std::size_t>(2 * a)] +
                                                       best.left_elements[static_cast<std::size_t>(2 * a + 1)]);
                for (int c = 0; c < 2; ++c)
                    joint.joint_elements[static_cast<std::size_t>(2 * a + c)] =
                        tensor(ga, best.right_elements[static_cast<std::size_t>(c)]);
            }
            consider(guessing_probability(m, target, x, z, joint), joint);
        }
    }

    // derivative-free refinement over the measurement chart
    const int restarts = std::max(1, cfg.restarts / 16);
    NmOptions nm;
    nm.max_iter = std::max(200, cfg.max_iterations / 4);
    nm.initial_step = 0.4;
    long evals = 0;
    auto objective = [&](const Eigen::VectorXd& v) {
        ++evals;
        std::vector<double> params(kChartParams);
        for (std::size_t i = 0; i < kChartParams; ++i) params[i] = v(static_cast<Eigen::Index>(i));
        return -guessing_probability(m, target, x, z,
                                     chart_measurement(m.scenario, target, params));
    };
    for (int r = 0; r < restarts; ++r) {
        const std::uint64_t stream = static_cast<std::uint64_t>(r) + 0x51ed2701ULL;
        std::seed_seq seq{cfg.seed, stream};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gau(0.0, 0.8);
        Eigen::VectorXd v0(static_cast<Eigen::Index>(kChartParams));
        for (Eigen::Index i = 0; i < v0.size(); ++i) v0(i) = gau(rng);
        if (r == 0) v0.tail(16).setZero();  // product-form start embeds the DE chart
        NmResult nr = nelder_mead(objective, v0, nm);
        std::vector<double> params(kChartParams);
        for (std::size_t i = 0; i < kChartParams; ++i)
            params[i] = nr.x(static_cast<Eigen::Index>(i));
        EveMeasurement eve = chart_measurement(m.scenario, target, params);
        consider(-nr.value, eve);
    }
    out.pg_lower_bound = std::min(out.pg_lower_bound, 1.0);  // strip rounding overshoot
    out.hmin_upper_bound =
        out.pg_lower_bound >= 1.0 ? 0.0 : -std::log2(std::max(1e-300, out.pg_lower_bound));
    return out;
}

AttackResult optimize_attack_best_settings(const AttackModel& m, AttackTarget target,
                                           const OptimizationConfig& cfg) {
    AttackResult best;
    bool first = true;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            AttackResult r = optimize_attack(m, target, x, z, cfg);
            if (first || r.hmin_upper_bound > best.hmin_upper_bound) {
                best = r;
                first = false;
            }
        }
    return best;
}

std::vector<EntropySweepRow> entropy_sweep(StrategyFamily family,
                                           const std::vector<double>& nu_grid,
                                           AttackScenario scenario, AttackTarget target,
                                           const OptimizationConfig& cfg) {
    std::vector<EntropySweepRow> rows;
    for (double nu : nu_grid) {
        if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("entropy_sweep: nu outside [0,1]");
        Strategy s;
        if (family == StrategyFamily::separable_feedback) {
            s = Strategy{werner(nu), werner(nu), optimal_separable_angles(),
                         CentralConfig::feedback(0.5)};
        } else {
            OptimizationConfig ocfg = cfg;
            ocfg.restarts = std::max(8, cfg.restarts / 8);
            OptimizationResult opt = optimize_entangled(nu, ocfg);
            s = Strategy{werner(nu), werner(nu), opt.best_angles,
                         CentralConfig::explicit_binary(opt.best_central)};
        }
        AttackModel m = build_attack_model(s, scenario);
        AttackResult r = optimize_attack_best_settings(m, target, cfg);
        EntropySweepRow row;
        row.nu = nu;
        row.scenario = scenario;
        row.target = target;
        row.pg_lb = r.pg_lower_bound;
        row.hmin_ub = r.hmin_upper_bound;
        row.x = r.x;
        row.z = r.z;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qnet
