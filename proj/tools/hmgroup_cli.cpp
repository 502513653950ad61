// hmgroup: receiver grouping for time sharing + two-layer hierarchical modulation.
//
//   hmgroup count 10
//   hmgroup solve --costs matrix.csv
//   hmgroup solve --snr receivers.csv --modcod table.csv
//   hmgroup oracle --costs matrix.csv
//   hmgroup simulate --snr-max 9 --receivers 500 --trials 100 --seed 7 --out run.json
//
// Exit codes: 0 success, 1 no symmetric solution from the heuristic (solve)
// or a failed ordering check (oracle), 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hmgroup/channel_sim.hpp"
#include "hmgroup/errors.hpp"
#include "hmgroup/hungarian.hpp"
#include "hmgroup/matching_core.hpp"
#include "hmgroup/rate_model.hpp"
#include "hmgroup/serialization.hpp"
#include "hmgroup/strategies.hpp"

namespace {

using namespace hmgroup;

constexpr int kExitOk = 0;
constexpr int kExitHeuristic = 1;
constexpr int kExitInput = 2;

struct RateOptions {
    std::string modcod_path;
    std::string pair_model = "capacity";
    std::string pair_table_path;
};

struct PerturbOptions {
    std::string config_path;
    std::optional<double> sigma;
    std::optional<int> max_retries;
    std::optional<std::uint64_t> seed;
};

struct OutputOptions {
    std::string out_path;
    std::string format = "json";
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

template <class Fn>
auto parse_file(const std::string& path, Fn&& parse) {
    auto in = open_input(path);
    try {
        return parse(in);
    } catch (const ParseError& e) {
        throw ParseError(e.row(), path + ": " + e.what());
    }
}

void emit(const OutputOptions& out, const std::function<void(std::ostream&)>& write) {
    if (out.out_path.empty() || out.out_path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(out.out_path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + out.out_path + "'");
    write(file);
    if (!file) throw InputError("failed writing '" + out.out_path + "'");
}

ModcodTable load_table(const RateOptions& opts) {
    if (opts.modcod_path.empty()) return ModcodTable::default_table();
    return parse_file(opts.modcod_path, [](std::istream& in) { return load_modcod_table(in); });
}

HierRateModel load_rate_model(const RateOptions& opts) {
    if (opts.pair_model == "capacity") {
        if (!opts.pair_table_path.empty())
            throw InputError("--pair-table requires --pair-model table");
        return HierRateModel::capacity();
    }
    if (opts.pair_table_path.empty()) throw InputError("--pair-model table requires --pair-table");
    return HierRateModel::table(parse_file(
        opts.pair_table_path, [](std::istream& in) { return load_pair_rate_table(in); }));
}

PerturbConfig resolve_perturb(const PerturbOptions& opts) {
    PerturbConfig cfg;
    if (!opts.config_path.empty()) {
        auto in = open_input(opts.config_path);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw InputError(opts.config_path + ": " + e.what());
        }
        cfg = perturb_config_from_json(j, cfg);
    }
    if (opts.sigma) cfg.sigma = *opts.sigma;
    if (opts.max_retries) cfg.max_retries = *opts.max_retries;
    if (opts.seed) cfg.seed = *opts.seed;
    if (!(cfg.sigma > 0.0)) throw InputError("--sigma must be positive");
    if (cfg.max_retries < 0) throw InputError("--max-retries must be non-negative");
    return cfg;
}

void add_rate_options(CLI::App* cmd, RateOptions& opts) {
    cmd->add_option("--modcod", opts.modcod_path, "MODCOD table CSV (default: bundled DVB-S2 set)");
    cmd->add_option("--pair-model", opts.pair_model, "Hierarchical pair rate model")
        ->check(CLI::IsMember({"capacity", "table"}));
    cmd->add_option("--pair-table", opts.pair_table_path,
                    "Pair rate CSV for --pair-model table");
}

void add_perturb_options(CLI::App* cmd, PerturbOptions& opts) {
    cmd->add_option("--config", opts.config_path,
                    "JSON {\"sigma\":..,\"max_retries\":..,\"seed\":..}; flags override it");
    cmd->add_option("--sigma", opts.sigma, "Std. deviation of the cost perturbation (1e-3)");
    cmd->add_option("--max-retries", opts.max_retries, "Perturbed solves before giving up (50)");
    cmd->add_option("--seed", opts.seed, "Random seed (0)");
}

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--out", opts.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

int run_count(std::size_t n, const OutputOptions& out) {
    const auto s = count_strategies(n);
    emit(out, [&](std::ostream& os) {
        if (out.format == "json")
            os << Json{{"schema", kSchemaVersion}, {"n", n}, {"count", s.str()}}.dump(2) << '\n';
        else
            os << s.str() << '\n';
    });
    return kExitOk;
}

int run_solve(const std::string& costs_path, const std::string& snr_path,
              const RateOptions& rate, const PerturbOptions& perturb_opts,
              const OutputOptions& out) {
    const PerturbConfig cfg = resolve_perturb(perturb_opts);
    std::optional<CostMatrix> costs;
    std::optional<MatchingReport> report;
    if (!costs_path.empty()) {
        costs.emplace(parse_file(costs_path, [](std::istream& in) { return load_cost_matrix_csv(in); }));
        report = quasi_optimal_matching(*costs, cfg);
    } else {
        const auto receivers =
            parse_file(snr_path, [](std::istream& in) { return load_receivers_csv(in); });
        costs.emplace(build_cost_matrix(receivers, load_table(rate), load_rate_model(rate)));
        report = quasi_optimal_matching(*costs, cfg, receivers);
    }

    emit(out, [&](std::ostream& os) {
        if (out.format == "json") {
            os << to_json(*report, *costs).dump(2) << '\n';
            return;
        }
        os << "receiver,partner\n";
        const auto& x = *report->symmetric_assignment;
        for (std::size_t i = 0; i < x.size(); ++i) os << i + 1 << ',' << x(i) + 1 << '\n';
    });
    return report->success ? kExitOk : kExitHeuristic;
}

int run_oracle(const std::string& costs_path, std::size_t cap, const PerturbOptions& perturb_opts,
               const OutputOptions& out) {
    const PerturbConfig cfg = resolve_perturb(perturb_opts);
    const CostMatrix c =
        parse_file(costs_path, [](std::istream& in) { return load_cost_matrix_csv(in); });
    if (c.size() > kPermutationBruteForceCap)
        throw CapExceededError("oracle refuses n = " + std::to_string(c.size()) +
                               ": permutation brute force is limited to n <= " +
                               std::to_string(kPermutationBruteForceCap));

    const auto hungarian = hungarian_solve(c);
    const auto brute_perm = brute_force_optimal_permutation(c);
    const auto brute_inv = brute_force_optimal_symmetric(c, cap);
    const auto heuristic = quasi_optimal_matching(c, cfg);
    constexpr double slack = 1e-9;

    const bool solver_matches = std::abs(hungarian.cost - brute_perm.cost) <= slack;
    const bool involution_bounded = brute_inv.cost >= brute_perm.cost - slack;
    const bool heuristic_bounded = *heuristic.symmetric_cost >= brute_inv.cost - slack;
    const bool pass = solver_matches && involution_bounded && heuristic_bounded;

    Json j;
    j["schema"] = kSchemaVersion;
    j["n"] = c.size();
    j["hungarian_cost"] = hungarian.cost;
    j["brute_permutation_cost"] = brute_perm.cost;
    j["brute_involution_cost"] = brute_inv.cost;
    j["heuristic_cost"] = *heuristic.symmetric_cost;
    j["hungarian_permutation"] = Json::array();
    for (const auto v : hungarian.permutation.sigma()) j["hungarian_permutation"].push_back(v + 1);
    j["brute_involution"] = to_json(brute_inv.assignment);
    j["heuristic_assignment"] = to_json(*heuristic.symmetric_assignment);
    j["checks"] = Json{{"hungarian_equals_brute_permutation", solver_matches},
                       {"involution_cost_at_least_permutation_cost", involution_bounded},
                       {"heuristic_cost_at_least_involution_cost", heuristic_bounded}};
    j["pass"] = pass;
    emit(out, [&](std::ostream& os) {
        if (out.format == "json") {
            os << j.dump(2) << '\n';
            return;
        }
        os << "hungarian_cost,brute_permutation_cost,brute_involution_cost,heuristic_cost,pass\n"
           << Json(hungarian.cost).dump() << ',' << Json(brute_perm.cost).dump() << ','
           << Json(brute_inv.cost).dump() << ',' << Json(*heuristic.symmetric_cost).dump() << ','
           << (pass ? "true" : "false") << '\n';
    });
    return pass ? kExitOk : kExitHeuristic;
}

int run_simulate(BeamModel model, std::size_t trials, const std::string& outage, unsigned threads,
                 const RateOptions& rate, const PerturbOptions& perturb_opts,
                 const OutputOptions& out, std::string pair_csv_path) {
    model.outage = outage == "skip" ? OutagePolicy::skip_trial : OutagePolicy::redraw;
    PerturbOptions po = perturb_opts;
    if (po.seed) model.seed = *po.seed;
    const PerturbConfig cfg = resolve_perturb(po);
    const auto summary =
        run_campaign(model, trials, cfg, load_table(rate), load_rate_model(rate), {threads});

    if (out.format == "csv") {
        emit(out, [&](std::ostream& os) {
            write_matrix_csv(os, summary.quasi_optimal_pair_probability());
        });
        return kExitOk;
    }
    emit(out, [&](std::ostream& os) { os << to_json(summary).dump(2) << '\n'; });
    if (pair_csv_path.empty() && !out.out_path.empty() && out.out_path != "-")
        pair_csv_path = out.out_path + ".pair_probability.csv";
    if (!pair_csv_path.empty()) {
        emit(OutputOptions{pair_csv_path, "csv"}, [&](std::ostream& os) {
            write_matrix_csv(os, summary.quasi_optimal_pair_probability());
        });
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-optimal receiver grouping for hierarchical modulation broadcast"};
    app.require_subcommand(1);

    RateOptions rate;
    PerturbOptions perturb_opts;

    std::size_t count_n = 0;
    auto* count = app.add_subcommand("count", "Number of single/pair grouping strategies");
    count->add_option("n", count_n, "Number of receivers")->required();
    OutputOptions count_out{"", "csv"};
    add_output_options(count, count_out);

    std::string costs_path, snr_path;
    auto* solve = app.add_subcommand("solve", "Quasi-optimal grouping for one population");
    auto* costs_opt = solve->add_option("--costs", costs_path, "Square cost-matrix CSV");
    auto* snr_opt = solve->add_option("--snr", snr_path, "Receiver CSV: receiver_id,snr_db");
    costs_opt->excludes(snr_opt);
    add_rate_options(solve, rate);
    add_perturb_options(solve, perturb_opts);
    OutputOptions solve_out;
    add_output_options(solve, solve_out);

    std::string oracle_costs;
    std::size_t cap = kDefaultEnumerationCap;
    auto* oracle = app.add_subcommand("oracle", "Compare solver and heuristic with brute force");
    oracle->add_option("--costs", oracle_costs, "Square cost-matrix CSV")->required();
    oracle->add_option("--cap", cap, "Involution enumeration cap");
    add_perturb_options(oracle, perturb_opts);
    OutputOptions oracle_out;
    add_output_options(oracle, oracle_out);

    BeamModel model;
    std::size_t trials = 100;
    std::string outage = "redraw";
    unsigned threads = 0;
    std::string pair_csv;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo spot-beam campaign");
    simulate->add_option("--snr-max", model.snr_max_db, "SNR at beam centre, dB");
    simulate->add_option("--receivers", model.n_receivers, "Receivers per trial");
    simulate->add_option("--trials", trials, "Number of trials");
    simulate->add_option("--edge-loss", model.edge_loss_db, "Attenuation at beam edge, dB");
    simulate->add_option("--weather-mean", model.weather_mean_db, "Mean weather attenuation, dB");
    simulate->add_option("--outage", outage, "Terminals below every MODCOD threshold")
        ->check(CLI::IsMember({"redraw", "skip"}));
    simulate->add_option("--threads", threads, "Worker threads (0 = all cores)");
    simulate->add_option("--pair-csv", pair_csv, "Pair probability CSV path");
    add_rate_options(simulate, rate);
    add_perturb_options(simulate, perturb_opts);
    OutputOptions simulate_out;
    add_output_options(simulate, simulate_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*count) {
            if (count_n == 0) throw InputError("n must be at least 1");
            return run_count(count_n, count_out);
        }
        if (*solve) {
            if (costs_path.empty() == snr_path.empty())
                throw InputError("solve needs exactly one of --costs or --snr");
            return run_solve(costs_path, snr_path, rate, perturb_opts, solve_out);
        }
        if (*oracle) return run_oracle(oracle_costs, cap, perturb_opts, oracle_out);
        return run_simulate(model, trials, outage, threads, rate, perturb_opts, simulate_out,
                            pair_csv);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const UnschedulableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
