#include "hmgroup/serialization.hpp"

#include <algorithm>

#include "csv.hpp"
#include "hmgroup/errors.hpp"

namespace hmgroup {

namespace {

Json one_based(const std::vector<std::size_t>& v) {
    Json out = Json::array();
    for (const auto i : v) out.push_back(i + 1);
    return out;
}

Json strategy_entry(double cost) {
    return Json{{"cost", cost}, {"spectrum_efficiency", 1.0 / cost}};
}

Json matrix_rows(const SquareMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto r = m.row(i);
        rows.push_back(Json(std::vector<double>(r.begin(), r.end())));
    }
    return rows;
}

}  // namespace

CostMatrix load_cost_matrix_csv(std::istream& in) {
    const auto rows = csv::read_rows(in);
    if (rows.empty()) throw ParseError(1, "empty cost matrix");
    const std::size_t n = rows.size();
    std::vector<std::vector<double>> values;
    values.reserve(n);
    for (const auto& row : rows) {
        if (row.fields.size() != n)
            throw ParseError(row.line, "expected " + std::to_string(n) + " entries, got " +
                                           std::to_string(row.fields.size()));
        std::vector<double> r;
        r.reserve(n);
        for (const auto& f : row.fields) {
            const double v = csv::parse_real(f, row.line, "cost");
            if (!(v > 0.0)) throw ParseError(row.line, "cost entries must be positive");
            r.push_back(v);
        }
        values.push_back(std::move(r));
    }
    return CostMatrix::from_rows(values);
}

void write_matrix_csv(std::ostream& out, const SquareMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out << ',';
            out << csv::format_real(m(i, j));
        }
        out << '\n';
    }
}

std::vector<Receiver> load_receivers_csv(std::istream& in) {
    const auto rows = csv::read_rows(in);
    if (rows.empty()) throw ParseError(1, "empty receiver list");
    const auto& header = rows.front();
    if (header.fields != std::vector<std::string>{"receiver_id", "snr_db"})
        throw ParseError(header.line, "expected header 'receiver_id,snr_db'");
    const std::size_t n = rows.size() - 1;
    if (n == 0) throw ParseError(header.line, "receiver list has no rows");

    std::vector<std::optional<double>> snr(n);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 2)
            throw ParseError(row.line, "expected 2 fields, got " + std::to_string(row.fields.size()));
        const long long id = csv::parse_integer(row.fields[0], row.line, "receiver_id");
        if (id < 1 || static_cast<std::size_t>(id) > n)
            throw ParseError(row.line, "receiver_id must lie in 1.." + std::to_string(n));
        auto& slot = snr[static_cast<std::size_t>(id - 1)];
        if (slot) throw ParseError(row.line, "duplicate receiver_id " + row.fields[0]);
        slot = csv::parse_real(row.fields[1], row.line, "snr_db");
    }
    std::vector<Receiver> receivers(n);
    for (std::size_t i = 0; i < n; ++i) receivers[i] = Receiver{i, *snr[i]};
    return receivers;
}

Json to_json(const Assignment& x) { return Json{{"partner", one_based(x.partner())}}; }

Assignment assignment_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("partner") || !j["partner"].is_array())
        throw InputError("assignment JSON needs a 'partner' array");
    std::vector<std::size_t> partner;
    for (const auto& v : j["partner"]) {
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw InputError("partner entries must be 1-based integers");
        partner.push_back(v.get<std::size_t>() - 1);
    }
    return Assignment(std::move(partner));
}

PerturbConfig perturb_config_from_json(const Json& j, PerturbConfig cfg) {
    if (!j.is_object()) throw InputError("perturbation config must be a JSON object");
    try {
        if (j.contains("sigma")) cfg.sigma = j.at("sigma").get<double>();
        if (j.contains("max_retries")) cfg.max_retries = j.at("max_retries").get<int>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("perturbation config: ") + e.what());
    }
    if (!(cfg.sigma > 0.0)) throw InputError("perturbation config: sigma must be positive");
    if (cfg.max_retries < 0) throw InputError("perturbation config: max_retries must be >= 0");
    return cfg;
}

Json to_json(const MatchingReport& report, const CostMatrix& c) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["n"] = c.size();
    j["upper_bound_cost"] = report.upper_bound_cost;
    j["upper_bound_efficiency"] = 1.0 / report.upper_bound_cost;
    if (report.upper_bound_permutation) {
        j["upper_bound_permutation"] = one_based(report.upper_bound_permutation->sigma());
        j["upper_bound_symmetric"] = report.upper_bound_permutation->is_involution();
    }
    j["success"] = report.success;
    j["retries_used"] = report.retries_used;
    j["source"] = std::string(to_string(report.source));
    if (report.symmetric_assignment) {
        j["assignment"] = to_json(*report.symmetric_assignment);
        j["pairs"] = report.symmetric_assignment->pair_count();
        j["singles"] = report.symmetric_assignment->single_count();
    }
    if (report.symmetric_cost) {
        j["symmetric_cost"] = *report.symmetric_cost;
        j["spectrum_efficiency"] = 1.0 / *report.symmetric_cost;
    }
    if (report.gap_fraction) j["gap_fraction"] = *report.gap_fraction;
    Json strategies;
    strategies["time_sharing"] = strategy_entry(report.time_sharing_cost);
    strategies["largest_diff"] = strategy_entry(report.largest_diff_cost);
    if (report.symmetric_cost) strategies["quasi_optimal"] = strategy_entry(*report.symmetric_cost);
    strategies["upper_bound"] = strategy_entry(report.upper_bound_cost);
    j["strategies"] = std::move(strategies);
    return j;
}

Json to_json(const SimulationSummary& s) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["model"] = Json{{"snr_max_db", s.model.snr_max_db},
                      {"edge_loss_db", s.model.edge_loss_db},
                      {"weather_mean_db", s.model.weather_mean_db},
                      {"n_receivers", s.model.n_receivers},
                      {"seed", s.model.seed},
                      {"outage", s.model.outage == OutagePolicy::redraw ? "redraw" : "skip"}};
    j["trials"] = s.trials;
    j["completed"] = s.completed;
    j["skipped"] = s.skipped;
    j["success_count"] = s.success_count;
    j["failure_count"] = s.failure_count;
    Json gains;
    for (const auto& [strategy, g] : s.gains)
        gains[std::string(to_string(strategy))] = Json{{"mean", g.mean}, {"min", g.min}, {"max", g.max}};
    j["gains"] = std::move(gains);

    Json records = Json::array();
    for (const auto& r : s.records) {
        Json rec{{"trial", r.index}, {"skipped", r.skipped}};
        if (r.skipped) {
            rec["reason"] = r.skip_reason;
        } else {
            Json eff;
            for (const auto& [strategy, v] : r.efficiency) eff[std::string(to_string(strategy))] = v;
            rec["efficiency"] = std::move(eff);
            rec["gap_fraction"] = r.gap_fraction;
            rec["success"] = r.heuristic_success;
            rec["retries_used"] = r.retries_used;
        }
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    j["pair_probability"] = matrix_rows(s.quasi_optimal_pair_probability());
    return j;
}

}  // namespace hmgroup
