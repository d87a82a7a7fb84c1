#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qnet/attack.hpp"
#include "qnet/classifier.hpp"
#include "qnet/io.hpp"
#include "qnet/optimizer.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// exit codes: 2 invalid input spec, 3 behavior validation, 4 optimizer,
// 5 classifier, 6 attack
struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

qnet::Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(2, "cannot open " + path);
    qnet::Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw CliError(2, std::string("parse error in ") + path + ": " + e.what());
    }
    return j;
}

std::ostream& output_stream(const std::string& out_path, std::ofstream& file) {
    if (out_path.empty()) return std::cout;
    file.open(out_path);
    if (!file) throw CliError(2, "cannot write " + out_path);
    return file;
}

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> v;
    if (steps <= 1) {
        v.push_back(lo);
        return v;
    }
    for (int i = 0; i < steps; ++i) v.push_back(lo + (hi - lo) * i / (steps - 1));
    return v;
}

std::vector<std::string> repro_header(std::uint64_t seed, double tol) {
    return {std::string("qnet version=") + kVersion, "seed=" + std::to_string(seed),
            "tol=" + qnet::format_double(tol)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bilocal-network nonlocality toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path;
    std::uint64_t seed = 1;
    int workers = 1;
    double tol = 1e-9;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--workers", workers, "worker threads for grid commands");
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--tol", tol, "numerical tolerance");

    // simulate
    auto* sim = app.add_subcommand("simulate", "behavior of a strategy spec");
    double sim_nu = 0.0, sim_p = 0.5, sim_a0 = 1.0, sim_a1 = 1.0;
    sim->add_option("--nu", sim_nu, "white-noise parameter of both sources");
    sim->add_option("--p", sim_p, "feedback mixture proportion");
    sim->add_option("--alpha0", sim_a0, "noise coefficient, outcome 0");
    sim->add_option("--alpha1", sim_a1, "noise coefficient, outcome 1");

    // witness
    auto* wit = app.add_subcommand("witness", "FNN witness values of a behavior file");
    std::string wit_behavior;
    wit->add_option("--behavior", wit_behavior, "behavior JSON path")->required();

    // optimize
    auto* opt = app.add_subcommand("optimize", "maximize the simultaneous FNN violation");
    double opt_nu = 0.0;
    std::string opt_mode = "separable";
    int opt_restarts = 64;
    opt->add_option("--nu", opt_nu, "white-noise parameter");
    opt->add_option("--mode", opt_mode, "separable | entangled | threshold");
    opt->add_option("--restarts", opt_restarts, "restart count");

    // sweep
    auto* swp = app.add_subcommand("sweep", "FNN values over a noise grid");
    std::string swp_mode = "reopt";
    double swp_lo = 0.0, swp_hi = 0.12;
    int swp_steps = 13, swp_restarts = 32;
    swp->add_option("--mode", swp_mode, "fixed | reopt | entangled");
    swp->add_option("--nu-min", swp_lo);
    swp->add_option("--nu-max", swp_hi);
    swp->add_option("--steps", swp_steps);
    swp->add_option("--restarts", swp_restarts);

    // classify
    auto* cls = app.add_subcommand("classify", "robustness and nonclassicality label");
    std::string cls_behavior;
    cls->add_option("--behavior", cls_behavior, "behavior JSON path")->required();

    // region-map
    auto* reg = app.add_subcommand("region-map", "label grid over (p, alpha1)");
    int reg_psteps = 21, reg_asteps = 21;
    double reg_alpha0 = 1.0, reg_nu = 0.0;
    reg->add_option("--p-steps", reg_psteps);
    reg->add_option("--alpha-steps", reg_asteps);
    reg->add_option("--alpha0", reg_alpha0);
    reg->add_option("--nu", reg_nu);

    // attack
    auto* att = app.add_subcommand("attack", "guessing-probability lower bounds");
    std::string att_scenario = "SE", att_target = "AC", att_central = "separable";
    double att_nu = 0.0, att_nu_max = -1.0;
    int att_steps = 1, att_restarts = 32;
    att->add_option("--scenario", att_scenario, "SE | DE");
    att->add_option("--target", att_target, "AC | ABC");
    att->add_option("--central", att_central, "separable | entangled");
    att->add_option("--nu", att_nu, "noise (or sweep start)");
    att->add_option("--nu-max", att_nu_max, "sweep end (enables sweep)");
    att->add_option("--steps", att_steps, "sweep steps");
    att->add_option("--restarts", att_restarts);

    CLI11_PARSE(app, argc, argv);

    std::ofstream file;
    try {
        qnet::Json config;
        if (!config_path.empty()) config = load_json_file(config_path);
        std::ostream& os = output_stream(out_path, file);

        if (sim->parsed()) {
            qnet::Strategy s;
            try {
                if (config.contains("strategy")) {
                    s = qnet::strategy_from_json(config.at("strategy"));
                } else {
                    qnet::Json spec{{"nu", sim_nu},
                                    {"central",
                                     {{"mode", "feedback"}, {"p", sim_p},
                                      {"alpha0", sim_a0}, {"alpha1", sim_a1}}}};
                    if (config.contains("angles")) spec["angles"] = config.at("angles");
                    s = qnet::strategy_from_json(spec);
                }
            } catch (const std::exception& e) {
                throw CliError(2, e.what());
            }
            qnet::Behavior b = qnet::behavior(s);
            os << qnet::behavior_to_json(b).dump(2) << "\n";
        } else if (wit->parsed()) {
            qnet::Behavior b = qnet::behavior_from_json(load_json_file(wit_behavior));
            try {
                b.validate(tol > 1e-9 ? tol : 1e-8);
            } catch (const std::exception& e) {
                throw CliError(3, e.what());
            }
            os << qnet::witness_to_json(qnet::fnn_values(b)).dump(2) << "\n";
        } else if (opt->parsed()) {
            qnet::OptimizationConfig cfg;
            cfg.restarts = opt_restarts;
            cfg.seed = seed;
            try {
                if (opt_mode == "separable") {
                    qnet::OptimizationResult r = qnet::optimize_separable(opt_nu, cfg);
                    auto arr = r.best_angles.to_array();
                    qnet::Json j{{"mode", "separable"}, {"nu", opt_nu},
                                 {"best_value", r.best_value},
                                 {"best_angles", arr}, {"evaluations", r.evaluations},
                                 {"restarts", cfg.restarts}, {"seed", seed}};
                    os << j.dump(2) << "\n";
                } else if (opt_mode == "entangled") {
                    qnet::OptimizationResult r = qnet::optimize_entangled(opt_nu, cfg);
                    qnet::Json povm = qnet::Json::array();
                    for (const auto& el : r.best_central.elements) {
                        qnet::Json rows = qnet::Json::array();
                        for (int i = 0; i < 4; ++i) {
                            qnet::Json row = qnet::Json::array();
                            for (int jcol = 0; jcol < 4; ++jcol)
                                row.push_back({el(i, jcol).real(), el(i, jcol).imag()});
                            rows.push_back(row);
                        }
                        povm.push_back(rows);
                    }
                    auto arr = r.best_angles.to_array();
                    qnet::Json j{{"mode", "entangled"}, {"nu", opt_nu},
                                 {"best_value", r.best_value},
                                 {"outer_angles", {arr[0], arr[1], arr[8], arr[9]}},
                                 {"central_povm", povm},
                                 {"evaluations", r.evaluations}, {"seed", seed}};
                    os << j.dump(2) << "\n";
                } else if (opt_mode == "threshold") {
                    qnet::ThresholdResult r = qnet::noise_threshold(cfg);
                    qnet::Json j{{"mode", "threshold"}, {"nu_low", r.nu_low},
                                 {"nu_high", r.nu_high}, {"nu_star", r.nu_star},
                                 {"seed", seed}};
                    os << j.dump(2) << "\n";
                } else {
                    throw CliError(2, "unknown optimize mode '" + opt_mode + "'");
                }
            } catch (const CliError&) {
                throw;
            } catch (const std::exception& e) {
                throw CliError(4, e.what());
            }
        } else if (swp->parsed()) {
            qnet::SweepMode mode;
            if (swp_mode == "fixed") mode = qnet::SweepMode::separable_fixed_angles;
            else if (swp_mode == "reopt") mode = qnet::SweepMode::separable_reopt;
            else if (swp_mode == "entangled") mode = qnet::SweepMode::entangled;
            else throw CliError(2, "unknown sweep mode '" + swp_mode + "'");
            qnet::OptimizationConfig cfg;
            cfg.restarts = swp_restarts;
            cfg.seed = seed;
            std::vector<qnet::SweepRow> rows;
            try {
                rows = qnet::sweep_fnn(linspace(swp_lo, swp_hi, swp_steps), mode, cfg);
            } catch (const std::exception& e) {
                throw CliError(4, e.what());
            }
            std::vector<std::vector<std::string>> cells;
            for (const auto& r : rows)
                cells.push_back({qnet::format_double(r.nu), qnet::format_double(r.fnn1),
                                 qnet::format_double(r.fnn2), swp_mode,
                                 std::to_string(seed)});
            qnet::write_csv(os, repro_header(seed, tol), "nu,fnn1,fnn2,mode,seed", cells);
        } else if (cls->parsed()) {
            qnet::Behavior b = qnet::behavior_from_json(load_json_file(cls_behavior));
            try {
                b.validate(tol > 1e-9 ? tol : 1e-8);
            } catch (const std::exception& e) {
                throw CliError(3, e.what());
            }
            try {
                qnet::RobustnessResult r = qnet::classify(b);
                qnet::Json j{{"t_full", r.t_full}, {"t_left", r.t_left},
                             {"t_right", r.t_right}, {"label", qnet::to_string(r.label)}};
                os << j.dump(2) << "\n";
            } catch (const std::exception& e) {
                throw CliError(5, e.what());
            }
        } else if (reg->parsed()) {
            try {
                std::vector<qnet::RegionCell> cells = qnet::region_map(
                    linspace(0.0, 1.0, reg_psteps), linspace(0.0, 1.0, reg_asteps),
                    reg_alpha0, reg_nu, qnet::optimal_separable_angles(), {}, workers);
                std::vector<std::vector<std::string>> rows;
                for (const auto& c : cells)
                    rows.push_back({qnet::format_double(c.p), qnet::format_double(c.alpha),
                                    qnet::format_double(c.result.t_full),
                                    qnet::format_double(c.result.t_left),
                                    qnet::format_double(c.result.t_right),
                                    qnet::to_string(c.result.label)});
                qnet::write_csv(os, repro_header(seed, tol),
                                "p,alpha,t_full,t_left,t_right,label", rows);
            } catch (const std::exception& e) {
                throw CliError(5, e.what());
            }
        } else if (att->parsed()) {
            try {
                qnet::AttackScenario sc = att_scenario == "SE" ? qnet::AttackScenario::SE
                                                               : qnet::AttackScenario::DE;
                if (att_scenario != "SE" && att_scenario != "DE")
                    throw CliError(2, "unknown scenario '" + att_scenario + "'");
                qnet::AttackTarget tg = att_target == "AC" ? qnet::AttackTarget::AC
                                                           : qnet::AttackTarget::ABC;
                if (att_target != "AC" && att_target != "ABC")
                    throw CliError(2, "unknown target '" + att_target + "'");
                qnet::StrategyFamily fam = att_central == "entangled"
                                               ? qnet::StrategyFamily::entangled_central
                                               : qnet::StrategyFamily::separable_feedback;
                qnet::OptimizationConfig cfg;
                cfg.restarts = att_restarts;
                cfg.seed = seed;
                std::vector<double> grid = att_nu_max >= 0.0
                                               ? linspace(att_nu, att_nu_max, att_steps)
                                               : std::vector<double>{att_nu};
                std::vector<qnet::EntropySweepRow> rows =
                    qnet::entropy_sweep(fam, grid, sc, tg, cfg);
                std::vector<std::vector<std::string>> cells;
                for (const auto& r : rows)
                    cells.push_back({qnet::format_double(r.nu), qnet::to_string(r.scenario),
                                     qnet::to_string(r.target), qnet::format_double(r.pg_lb),
                                     qnet::format_double(r.hmin_ub), std::to_string(r.x + 1),
                                     std::to_string(r.z + 1), std::to_string(seed)});
                qnet::write_csv(os, repro_header(seed, tol),
                                "nu,scenario,target,pg_lb,hmin_ub,x,z,seed", cells);
            } catch (const CliError&) {
                throw;
            } catch (const std::exception& e) {
                throw CliError(6, e.what());
            }
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
