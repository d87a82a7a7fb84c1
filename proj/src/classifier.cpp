#include "qnet/classifier.hpp"

#include <cmath>
#include <future>
#include <random>

namespace qnet {

std::string to_string(Label l) {
    switch (l) {
        case Label::Classical: return "Classical";
        case Label::MNN: return "MNN";
        case Label::FNN: return "FNN";
        case Label::LeftLocalOnly: return "LeftLocalOnly";
        case Label::RightLocalOnly: return "RightLocalOnly";
    }
    return "?";
}

std::string to_string(LocalVariant v) {
    switch (v) {
        case LocalVariant::full: return "full";
        case LocalVariant::left: return "left";
        case LocalVariant::right: return "right";
    }
    return "?";
}

TargetTable noisy_target(const Behavior& p, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("noisy_target: t outside [0,1]");
    TargetTable out;
    out.t = t;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c)
                        out.at(x, z, a, b, c) =
                            t * t * p.at(x, z, a, b, c) +
                            0.25 * t * (1.0 - t) * (p.marginal_a(x, a) + p.marginal_c(z, c)) +
                            0.125 * (1.0 - t) * (1.0 - t);
    return out;
}

namespace {

// unpacked-atom outcome for setting s (0-based); atom bit order: setting 1 = msb
inline int atom_outcome(int atom, int s) { return (atom >> (1 - s)) & 1; }

Behavior mirrored(const Behavior& p) {
    Behavior m;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c)
                        m.at(x, z, a, b, c) = p.at(z, x, c, b, a);
    return m;
}

// ---------------------------------------------------------------------------
// FULL variant. Q(avec,b,cvec) with independent (avec,cvec) marginal.
// Free LP variables per half-step: factor f (4) and u (16, b=0 mass per
// atom pair), with slack pairs for the 32 matching rows:
//   b=0 row:  sum u                      = T
//   b=1 row:  sum (q r - u)              = T   (q r linear in the free factor)
// caps: u <= q r.
// ---------------------------------------------------------------------------

struct StepResult {
    bool ok = false;
    double residual = 0.0;
    Eigen::VectorXd factor;  // 4
    Eigen::VectorXd u;       // 16
};

StepResult full_step(const TargetTable& tt, const Eigen::VectorXd& fixed, bool fixed_is_alice) {
    const int nf = 4, nu = 16, ns = 32;
    const int n = nf + nu + 2 * ns;
    LpProblem lp;
    lp.cost = Eigen::VectorXd::Zero(n);
    lp.cost.segment(nf + nu, 2 * ns).setOnes();
    lp.a_eq = Eigen::MatrixXd::Zero(1 + ns, n);
    lp.b_eq = Eigen::VectorXd::Zero(1 + ns);
    lp.a_ub = Eigen::MatrixXd::Zero(nu, n);
    lp.b_ub = Eigen::VectorXd::Zero(nu);

    lp.a_eq.row(0).segment(0, nf).setOnes();
    lp.b_eq(0) = 1.0;

    int row = 1;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c) {
                        for (int av = 0; av < 4; ++av) {
                            if (atom_outcome(av, x) != a) continue;
                            for (int cv = 0; cv < 4; ++cv) {
                                if (atom_outcome(cv, z) != c) continue;
                                const int uk = nf + 4 * av + cv;
                                if (b == 0) {
                                    lp.a_eq(row, uk) += 1.0;
                                } else {
                                    if (fixed_is_alice)
                                        lp.a_eq(row, cv) += fixed(av);
                                    else
                                        lp.a_eq(row, av) += fixed(cv);
                                    lp.a_eq(row, uk) -= 1.0;
                                }
                            }
                        }
                        lp.a_eq(row, nf + nu + (row - 1)) = -1.0;
                        lp.a_eq(row, nf + nu + ns + (row - 1)) = 1.0;
                        lp.b_eq(row) = tt.at(x, z, a, b, c);
                        ++row;
                    }
    int cap = 0;
    for (int av = 0; av < 4; ++av)
        for (int cv = 0; cv < 4; ++cv) {
            lp.a_ub(cap, nf + 4 * av + cv) = 1.0;
            if (fixed_is_alice)
                lp.a_ub(cap, cv) = -fixed(av);
            else
                lp.a_ub(cap, av) = -fixed(cv);
            ++cap;
        }

    StepResult r;
    LpResult sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) return r;
    r.ok = true;
    r.residual = sol.objective;
    r.factor = sol.x.segment(0, nf);
    r.u = sol.x.segment(nf, nu);
    return r;
}

// ---------------------------------------------------------------------------
// LEFT variant. Per-z tables Q_z(avec,b,c) = q(avec) w_z(b,c|avec) with a
// z-independent Alice factor q and independence sum_b w_z(b,c|avec) = r_z(c).
// Free variables per half-step: q (4) or r (4 = r_z(c)), and u (16: z,avec,c).
// ---------------------------------------------------------------------------

StepResult left_step(const TargetTable& tt, const Eigen::VectorXd& fixed, bool fixed_is_alice) {
    const int nf = 4, nu = 16, ns = 32;
    const int n = nf + nu + 2 * ns;
    const int neq = (fixed_is_alice ? 2 : 1) + ns;
    LpProblem lp;
    lp.cost = Eigen::VectorXd::Zero(n);
    lp.cost.segment(nf + nu, 2 * ns).setOnes();
    lp.a_eq = Eigen::MatrixXd::Zero(neq, n);
    lp.b_eq = Eigen::VectorXd::Zero(neq);
    lp.a_ub = Eigen::MatrixXd::Zero(nu, n);
    lp.b_ub = Eigen::VectorXd::Zero(nu);

    int row = 0;
    if (fixed_is_alice) {
        // solving for r_z(c): normalized per z
        for (int z = 0; z < 2; ++z, ++row) {
            lp.a_eq(row, 2 * z) = 1.0;
            lp.a_eq(row, 2 * z + 1) = 1.0;
            lp.b_eq(row) = 1.0;
        }
    } else {
        lp.a_eq.row(0).segment(0, nf).setOnes();
        lp.b_eq(0) = 1.0;
        row = 1;
    }
    const int srow0 = row;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c) {
                        const int i = row - srow0;
                        for (int av = 0; av < 4; ++av) {
                            if (atom_outcome(av, x) != a) continue;
                            const int uk = nf + 8 * z + 2 * av + c;
                            if (b == 0) {
                                lp.a_eq(row, uk) += 1.0;
                            } else {
                                if (fixed_is_alice)
                                    lp.a_eq(row, 2 * z + c) += fixed(av);
                                else
                                    lp.a_eq(row, av) += fixed(2 * z + c);
                                lp.a_eq(row, uk) -= 1.0;
                            }
                        }
                        lp.a_eq(row, nf + nu + i) = -1.0;
                        lp.a_eq(row, nf + nu + ns + i) = 1.0;
                        lp.b_eq(row) = tt.at(x, z, a, b, c);
                        ++row;
                    }
    int cap = 0;
    for (int z = 0; z < 2; ++z)
        for (int av = 0; av < 4; ++av)
            for (int c = 0; c < 2; ++c, ++cap) {
                lp.a_ub(cap, nf + 8 * z + 2 * av + c) = 1.0;
                if (fixed_is_alice)
                    lp.a_ub(cap, 2 * z + c) = -fixed(av);
                else
                    lp.a_ub(cap, av) = -fixed(2 * z + c);
            }

    StepResult r;
    LpResult sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) return r;
    r.ok = true;
    r.residual = sol.objective;
    r.factor = sol.x.segment(0, nf);
    r.u = sol.x.segment(nf, nu);
    return r;
}

double seesaw(const TargetTable& tt, Eigen::VectorXd q, bool left_variant, int rounds,
              Eigen::VectorXd* best_q, Eigen::VectorXd* best_r, Eigen::VectorXd* best_u) {
    const double qs = q.sum();
    if (qs <= 0.0) return 1e300;
    q /= qs;
    double best = 1e300;
    for (int it = 0; it < rounds; ++it) {
        StepResult sr = left_variant ? left_step(tt, q, true) : full_step(tt, q, true);
        if (!sr.ok)
            throw std::runtime_error("feasibility: LP solve failed in see-saw round " +
                                     std::to_string(it));
        Eigen::VectorXd r = sr.factor.cwiseMax(0.0);  // strip solver rounding
        if (left_variant) {
            for (int z = 0; z < 2; ++z) {
                const double s = r(2 * z) + r(2 * z + 1);
                if (s <= 0.0) return std::min(best, sr.residual);
                r(2 * z) /= s;
                r(2 * z + 1) /= s;
            }
        } else {
            const double s = r.sum();
            if (s <= 0.0) return std::min(best, sr.residual);
            r /= s;
        }
        StepResult sq = left_variant ? left_step(tt, r, false) : full_step(tt, r, false);
        if (!sq.ok)
            throw std::runtime_error("feasibility: LP solve failed in see-saw round " +
                                     std::to_string(it));
        Eigen::VectorXd qnew = sq.factor.cwiseMax(0.0);
        const double s = qnew.sum();
        if (s <= 0.0) return std::min(best, sq.residual);
        if (sq.residual < best - 1e-12) {
            best = sq.residual;
            if (best_q) *best_q = qnew / s;
            if (best_r) *best_r = r;
            if (best_u) *best_u = sq.u;
            q = qnew / s;
        } else {
            best = std::min(best, sq.residual);
            break;
        }
    }
    return best;
}

// marginal of the target's unpacked side per setting s: T(outcome | s)
double target_marginal(const TargetTable& tt, bool alice_side, int s, int outcome) {
    double sum = 0.0;
    for (int other = 0; other < 2; ++other)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    if (alice_side) {
                        if (a != outcome) continue;
                        sum += tt.at(s, other, a, b, c);
                    } else {
                        if (c != outcome) continue;
                        sum += tt.at(other, s, a, b, c);
                    }
                }
    return sum / 2.0;
}

// pinned-marginal factor family: product of the two setting marginals plus a
// correlation term gamma * (-1)^(o1+o2)
Eigen::VectorXd pinned_factor(const TargetTable& tt, bool alice_side, double gamma) {
    Eigen::VectorXd f(4);
    const double m10 = target_marginal(tt, alice_side, 0, 0);
    const double m20 = target_marginal(tt, alice_side, 1, 0);
    for (int atom = 0; atom < 4; ++atom) {
        const int o1 = atom_outcome(atom, 0), o2 = atom_outcome(atom, 1);
        const double p1 = o1 == 0 ? m10 : 1.0 - m10;
        const double p2 = o2 == 0 ? m20 : 1.0 - m20;
        f(atom) = p1 * p2 + gamma * ((o1 + o2) % 2 == 0 ? 1.0 : -1.0);
    }
    return f;
}

std::vector<Eigen::VectorXd> seed_factors(const TargetTable& tt, bool alice_side,
                                          const ClassifierConfig& cfg) {
    std::vector<Eigen::VectorXd> seeds;
    for (int k = 0; k < 4; ++k) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(4);
        e(k) = 1.0;
        seeds.push_back(e);
    }
    seeds.push_back(Eigen::VectorXd::Constant(4, 0.25));
    for (int g = 0; g < cfg.gamma_seeds; ++g) {
        const double gamma = -0.26 + 0.52 * g / std::max(1, cfg.gamma_seeds - 1);
        Eigen::VectorXd f = pinned_factor(tt, alice_side, gamma);
        if (f.minCoeff() > -1e-12) seeds.push_back(f.cwiseMax(0.0));
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 0; k < cfg.random_seeds; ++k) {
        Eigen::VectorXd f(4);
        for (int i = 0; i < 4; ++i) f(i) = -std::log(1.0 - uni(rng));
        seeds.push_back(f / f.sum());
    }
    return seeds;
}

FeasibilityResult feasibility_impl(const Behavior& p, double t, LocalVariant variant,
                                   const ClassifierConfig& cfg,
                                   const Eigen::VectorXd* warm) {
    const bool right = variant == LocalVariant::right;
    const Behavior pm = right ? mirrored(p) : p;
    const TargetTable tt = noisy_target(pm, t);
    const bool left_like = variant != LocalVariant::full;

    FeasibilityResult out;
    out.residual = 1e300;
    out.witness.variant = variant;

    std::vector<Eigen::VectorXd> seeds;
    if (warm && warm->size() == 4) seeds.push_back(*warm);
    for (auto& s : seed_factors(tt, true, cfg)) seeds.push_back(std::move(s));

    for (const auto& s : seeds) {
        Eigen::VectorXd q, r, u;
        const double resid = seesaw(tt, s, left_like, cfg.seesaw_rounds, &q, &r, &u);
        if (resid < out.residual) {
            out.residual = resid;
            if (q.size() == 4) {
                out.witness.unpacked_factor = q;
                out.witness.packed_factor = r;
                out.witness.b_mass = u;
            }
        }
        if (out.residual < cfg.epsilon) break;
    }
    out.feasible = out.residual < cfg.epsilon;
    return out;
}

}  // namespace

FeasibilityResult feasibility(const Behavior& p, double t, LocalVariant variant,
                              const ClassifierConfig& cfg) {
    return feasibility_impl(p, t, variant, cfg, nullptr);
}

double robustness(const Behavior& p, LocalVariant variant, const ClassifierConfig& cfg) {
    FeasibilityResult f1 = feasibility_impl(p, 1.0, variant, cfg, nullptr);
    if (f1.feasible) return 1.0;
    double lo = 0.0, hi = 1.0;
    Eigen::VectorXd warm;
    bool have_warm = false;
    while (hi - lo > cfg.bisect_width) {
        const double mid = 0.5 * (lo + hi);
        ClassifierConfig probe = cfg;
        probe.random_seeds = 1;
        FeasibilityResult f = feasibility_impl(p, mid, variant, probe,
                                               have_warm ? &warm : nullptr);
        if (f.feasible) {
            lo = mid;
            if (f.witness.unpacked_factor.size() == 4) {
                warm = f.witness.unpacked_factor;
                have_warm = true;
            }
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

RobustnessResult classify(const Behavior& p, const ClassifierConfig& cfg) {
    RobustnessResult r;
    r.t_full = robustness(p, LocalVariant::full, cfg);
    r.t_left = robustness(p, LocalVariant::left, cfg);
    r.t_right = robustness(p, LocalVariant::right, cfg);
    r.residual_full = feasibility(p, r.t_full, LocalVariant::full, cfg).residual;
    r.residual_left = feasibility(p, r.t_left, LocalVariant::left, cfg).residual;
    r.residual_right = feasibility(p, r.t_right, LocalVariant::right, cfg).residual;
    const double thr = 1.0 - cfg.delta;
    if (r.t_full >= thr)
        r.label = Label::Classical;
    else if (r.t_left >= thr && r.t_right >= thr)
        r.label = Label::MNN;
    else if (r.t_left < thr && r.t_right < thr)
        r.label = Label::FNN;
    else if (r.t_left >= thr)
        r.label = Label::LeftLocalOnly;
    else
        r.label = Label::RightLocalOnly;
    return r;
}

std::vector<RegionCell> region_map(const std::vector<double>& p_grid,
                                   const std::vector<double>& alpha_grid, double alpha0,
                                   double nu, const AngleSet& angles,
                                   const ClassifierConfig& cfg, int workers) {
    for (double v : p_grid)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("region_map: p outside [0,1]");
    for (double v : alpha_grid)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("region_map: alpha outside [0,1]");

    const QuantumState src = werner(nu);
    std::vector<RegionCell> cells(p_grid.size() * alpha_grid.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const double pv = p_grid[idx / alpha_grid.size()];
            const double av = alpha_grid[idx % alpha_grid.size()];
            Strategy s{src, src, angles, CentralConfig::feedback(pv, alpha0, av)};
            RegionCell cell;
            cell.p = pv;
            cell.alpha = av;
            cell.result = classify(behavior(s), cfg);
            cells[idx] = cell;
        }
    };
    const std::size_t total = cells.size();
    if (workers <= 1 || total < 2) {
        work(0, total);
    } else {
        const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), total);
        std::vector<std::future<void>> futs;
        const std::size_t chunk = (total + nw - 1) / nw;
        for (std::size_t w = 0; w < nw; ++w) {
            const std::size_t b = w * chunk, e = std::min(total, b + chunk);
            if (b >= e) break;
            futs.push_back(std::async(std::launch::async, work, b, e));
        }
        for (auto& f : futs) f.get();
    }
    return cells;
}

}  // namespace qnet
