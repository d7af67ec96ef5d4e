#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nlvrp/json_io.hpp"
#include "nlvrp/local_model.hpp"
#include "nlvrp/montecarlo.hpp"
#include "nlvrp/optimize.hpp"

namespace {

using nlvrp::Behavior;

std::string fixed9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

Behavior deterministic_preset(const std::string& digits) {
    if (digits.size() != 4 || digits.find_first_not_of("12") != std::string::npos) {
        throw nlvrp::InputError("deterministic preset needs four digits in {1,2}: f1(1) f1(2) f2(1) f2(2)");
    }
    nlvrp::DeterministicStrategy s{{digits[0] - '0', digits[1] - '0'},
                                   {digits[2] - '0', digits[3] - '0'}};
    return s.to_behavior();
}

// Behavior sources: the presets uniform, pr-box, canonical-quantum and
// deterministic:<f1f2>, or a JSON file holding either a behavior table or a
// quantum strategy.
Behavior resolve_behavior(const std::string& source) {
    if (source == "uniform") {
        nlvrp::ProbTable t;
        for (auto& row : t) row.fill(0.25);
        return Behavior::from_table(t);
    }
    if (source == "pr-box") return nlvrp::pr_box();
    if (source == "canonical-quantum") {
        return nlvrp::behavior_from_quantum(nlvrp::canonical_chsh_strategy());
    }
    if (source.rfind("deterministic:", 0) == 0) {
        return deterministic_preset(source.substr(14));
    }
    const nlohmann::json j = nlvrp::load_json_file(source);
    if (j.contains("theta")) {
        return nlvrp::behavior_from_quantum(nlvrp::quantum_strategy_from_json(j));
    }
    return nlvrp::behavior_from_json(j);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw nlvrp::InputError("cannot write file: " + path);
    out << content;
}

void export_behavior(const std::string& path, const Behavior& b) {
    write_text_file(path, nlvrp::to_json(b).dump(2) + "\n");
}

struct EvalOptions {
    std::string game_path, behavior_source;
    std::string export_behavior_path, export_table_path;
};

void run_eval(const EvalOptions& opt) {
    const nlvrp::GameConfig config = nlvrp::game_config_from_json(nlvrp::load_json_file(opt.game_path));
    const Behavior behavior = resolve_behavior(opt.behavior_source);
    const bool tilted = config.game.zeta > 0.0;
    const nlvrp::PayoffTable table = tilted ? nlvrp::build_tilted_payoff_table(config.game)
                                            : nlvrp::build_payoff_table(config.game.base);

    std::cout << "earnings: " << fixed9(nlvrp::earnings(table, config.prior, behavior)) << "\n";
    if (config.prior.is_uniform()) {
        if (tilted) {
            std::cout << "marginal_form: "
                      << fixed9(nlvrp::tilted_earnings_marginal_form(config.game, behavior))
                      << "\n";
            std::cout << "linear_form: "
                      << fixed9(nlvrp::tilted_earnings_linear_form(config.game, behavior))
                      << "  (matches the trace form only when u_l+u_s+x-y = 2)\n";
            std::cout << "m0: " << fixed9(behavior.marginal_first(1)) << "\n";
        } else {
            std::cout << "closed_form: "
                      << fixed9(nlvrp::earnings_closed_form(config.game.base, behavior)) << "\n";
        }
        std::cout << "chsh: " << fixed9(nlvrp::chsh_value(behavior)) << "\n";
    }
    if (!opt.export_behavior_path.empty()) export_behavior(opt.export_behavior_path, behavior);
    if (!opt.export_table_path.empty()) {
        write_text_file(opt.export_table_path, nlvrp::to_json(table).dump(2) + "\n");
    }
}

void run_certify(const std::string& behavior_source, const std::string& export_path) {
    const Behavior behavior = resolve_behavior(behavior_source);
    const nlvrp::LocalityVerdict verdict = nlvrp::certify_local(behavior);
    std::cout << (verdict.local ? "Local" : "Nonlocal") << ", CHSH = "
              << fixed9(verdict.witness_value) << "\n";
    const char* labels[4] = {"<11>", "<12>", "<21>", "<22>"};
    std::cout << "relabeling:";
    for (int k = 0; k < 4; ++k) {
        std::cout << " " << (verdict.witness.signs[k] > 0 ? "+" : "-") << labels[k];
    }
    std::cout << "\n";
    if (verdict.local) {
        const nlvrp::LocalModel model = nlvrp::lhv_decomposition(behavior);
        std::cout << "deterministic mixture:";
        for (int k = 0; k < 16; ++k) {
            if (model.weights[k] > 1e-12) {
                const auto& s = nlvrp::all_deterministic_strategies()[k];
                std::printf(" %d%d%d%d:%.6f", s.first[0], s.first[1], s.second[0], s.second[1],
                            model.weights[k]);
            }
        }
        std::cout << "\n";
    }
    if (!export_path.empty()) export_behavior(export_path, behavior);
}

struct OptimizeOptions {
    std::string game_path;
    std::string classes = "classical,quantum,ns";
    std::string witness_out;
};

void run_optimize(const OptimizeOptions& opt) {
    const nlvrp::GameConfig config = nlvrp::game_config_from_json(nlvrp::load_json_file(opt.game_path));
    const bool tilted = config.game.zeta > 0.0;
    const nlvrp::PayoffTable table = tilted ? nlvrp::build_tilted_payoff_table(config.game)
                                            : nlvrp::build_payoff_table(config.game.base);

    const bool want_classical = opt.classes.find("classical") != std::string::npos;
    const bool want_quantum = opt.classes.find("quantum") != std::string::npos;
    const bool want_ns = opt.classes.find("ns") != std::string::npos;
    if (!want_classical && !want_quantum && !want_ns) {
        throw nlvrp::InputError("no recognized strategy class in --classes");
    }

    std::optional<Behavior> quantum_witness;
    if (want_classical) {
        const auto outcome = nlvrp::classical_optimum(table, config.prior);
        std::cout << "classical: " << fixed9(outcome.value)
                  << "  (CHSH = " << fixed9(outcome.witness_chsh) << ")\n";
    }
    if (want_quantum) {
        nlvrp::QuantumSearchSettings settings;
        if (const auto matched = nlvrp::matched_tilted_strategy(config.game.base, config.game.zeta)) {
            settings.seeds.push_back(matched->strategy);
        }
        const auto outcome = nlvrp::quantum_optimum(table, config.prior, settings);
        std::cout << "quantum: " << fixed9(outcome.value)
                  << "  (CHSH = " << fixed9(outcome.witness_chsh) << ")\n";
        if (config.prior.is_uniform()) {
            if (tilted) {
                if (const auto matched =
                        nlvrp::matched_tilted_strategy(config.game.base, config.game.zeta)) {
                    const Behavior matched_behavior = nlvrp::behavior_from_quantum(matched->strategy);
                    std::cout << "quantum_tilt_matched: "
                              << fixed9(nlvrp::tilted_earnings(config.game, matched_behavior))
                              << "\n";
                }
            } else {
                std::cout << "quantum_cap: " << fixed9(nlvrp::tsirelson_cap(config.game.base))
                          << "\n";
            }
        }
        quantum_witness = outcome.witness_behavior;
    }
    if (want_ns) {
        const auto outcome = nlvrp::ns_optimum(table, config.prior);
        std::cout << "ns: " << fixed9(outcome.value)
                  << "  (CHSH = " << fixed9(outcome.witness_chsh) << ")\n";
    }
    if (!opt.witness_out.empty() && quantum_witness) {
        export_behavior(opt.witness_out, *quantum_witness);
    }
}

void run_scan(const std::string& region_path, const std::string& out_path) {
    const nlvrp::RegionSpec region = nlvrp::region_from_json(nlvrp::load_json_file(region_path));
    const nlvrp::ScanResult result = nlvrp::advantage_scan(region);
    std::ofstream out(out_path);
    if (!out) throw nlvrp::InputError("cannot write file: " + out_path);
    nlvrp::write_scan_csv(result, out);
    std::cout << "rows: " << result.rows.size() << "\n";
    std::cout << "invalid points skipped: " << result.invalid_points << "\n";
}

struct SimulateOptions {
    std::string game_path, behavior_source, out_path, log_path;
    std::uint64_t rounds = 100000;
    std::uint64_t seed = 1;
};

void run_simulate(const SimulateOptions& opt) {
    const nlvrp::GameConfig config = nlvrp::game_config_from_json(nlvrp::load_json_file(opt.game_path));
    const Behavior behavior = resolve_behavior(opt.behavior_source);
    const nlvrp::PayoffTable table = config.game.zeta > 0.0
                                         ? nlvrp::build_tilted_payoff_table(config.game)
                                         : nlvrp::build_payoff_table(config.game.base);

    std::vector<nlvrp::RoundLogRow> log;
    const auto report = nlvrp::simulate_rounds(table, config.prior, behavior, opt.rounds,
                                               opt.seed, opt.log_path.empty() ? nullptr : &log);
    const std::string json = nlvrp::to_json(report).dump(2) + "\n";
    if (opt.out_path.empty()) {
        std::cout << json;
    } else {
        write_text_file(opt.out_path, json);
        std::cout << "empirical_mean: " << fixed9(report.empirical_mean) << "\n";
        std::cout << "analytic_mean: " << fixed9(report.analytic_mean) << "\n";
        std::cout << "z_score: " << fixed9(report.z_score) << "\n";
    }
    if (!opt.log_path.empty()) {
        std::ofstream out(opt.log_path);
        if (!out) throw nlvrp::InputError("cannot write file: " + opt.log_path);
        nlvrp::write_round_log_csv(log, out);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlation-assisted vehicle-routing games: evaluate, certify, optimize, scan, simulate"};
    app.require_subcommand(1);

    EvalOptions eval_opt;
    auto* eval = app.add_subcommand("eval", "Expected earnings of a behavior under a game");
    eval->add_option("--game", eval_opt.game_path, "game config JSON")->required();
    eval->add_option("--behavior", eval_opt.behavior_source, "behavior preset or JSON file")->required();
    eval->add_option("--export-behavior", eval_opt.export_behavior_path, "write the resolved behavior as JSON");
    eval->add_option("--export-table", eval_opt.export_table_path, "write the payoff table as JSON");

    std::string certify_source, certify_export;
    auto* certify = app.add_subcommand("certify", "Local/Nonlocal verdict with CHSH witness");
    certify->add_option("--behavior", certify_source, "behavior preset or JSON file")->required();
    certify->add_option("--export-behavior", certify_export, "write the resolved behavior as JSON");

    OptimizeOptions optimize_opt;
    auto* optimize = app.add_subcommand("optimize", "Optimal earnings per strategy class");
    optimize->add_option("--game", optimize_opt.game_path, "game config JSON")->required();
    optimize->add_option("--classes", optimize_opt.classes, "subset of classical,quantum,ns");
    optimize->add_option("--witness-out", optimize_opt.witness_out, "write the quantum witness behavior");

    std::string scan_region, scan_out;
    auto* scan = app.add_subcommand("scan", "Advantage scan over a parameter region");
    scan->add_option("--region", scan_region, "region spec JSON")->required();
    scan->add_option("--out", scan_out, "output CSV path")->required();

    SimulateOptions sim_opt;
    auto* simulate = app.add_subcommand("simulate", "Sampled delivery rounds vs the analytic mean");
    simulate->add_option("--game", sim_opt.game_path, "game config JSON")->required();
    simulate->add_option("--behavior", sim_opt.behavior_source, "behavior preset or JSON file")->required();
    simulate->add_option("--rounds", sim_opt.rounds, "number of rounds");
    simulate->add_option("--seed", sim_opt.seed, "RNG seed");
    simulate->add_option("--out", sim_opt.out_path, "report JSON path (stdout when omitted)");
    simulate->add_option("--log", sim_opt.log_path, "per-round CSV log path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) run_eval(eval_opt);
        if (certify->parsed()) run_certify(certify_source, certify_export);
        if (optimize->parsed()) run_optimize(optimize_opt);
        if (scan->parsed()) run_scan(scan_region, scan_out);
        if (simulate->parsed()) run_simulate(sim_opt);
    } catch (const nlvrp::InvalidParams& e) {
        std::cerr << "invalid game parameters: " << e.what() << "\n";
        return 2;
    } catch (const nlvrp::SignalingInput& e) {
        std::cerr << "signaling behavior: " << e.what() << "\n";
        return 4;
    } catch (const nlvrp::NotAProbabilityTable& e) {
        std::cerr << "malformed probability table: " << e.what() << "\n";
        return 3;
    } catch (const nlvrp::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const nlvrp::EmptyRegion& e) {
        std::cerr << "empty region: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
