#include "hmgroup/rate_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "csv.hpp"
#include "hmgroup/errors.hpp"

namespace hmgroup {

namespace {

constexpr std::string_view kDefaultModcodCsv =
    "modulation,bits_per_symbol,code_rate,snr_threshold_db\n"
    "QPSK,2,1/4,-2.6583\n"
    "QPSK,2,1/3,-1.0691\n"
    "QPSK,2,2/5,0.0000\n"
    "QPSK,2,1/2,1.3938\n"
    "QPSK,2,3/5,2.6208\n"
    "QPSK,2,2/3,3.3742\n"
    "QPSK,2,3/4,4.2619\n"
    "QPSK,2,4/5,4.7712\n"
    "QPSK,2,5/6,5.1026\n"
    "QPSK,2,8/9,5.6421\n"
    "QPSK,2,9/10,5.7482\n"
    "8PSK,3,3/5,5.7482\n"
    "8PSK,3,2/3,6.6809\n"
    "8PSK,3,3/4,7.7996\n"
    "8PSK,3,5/6,8.8785\n"
    "8PSK,3,8/9,9.5806\n"
    "8PSK,3,9/10,9.7196\n"
    "16APSK,4,2/3,9.5806\n"
    "16APSK,4,3/4,10.9532\n"
    "16APSK,4,4/5,11.7609\n"
    "16APSK,4,5/6,12.2941\n"
    "16APSK,4,8/9,13.1749\n"
    "16APSK,4,9/10,13.3500\n"
    "32APSK,5,3/4,13.9389\n"
    "32APSK,5,4/5,14.9136\n"
    "32APSK,5,5/6,15.5596\n"
    "32APSK,5,8/9,16.6306\n"
    "32APSK,5,9/10,16.8440\n";

void check_entry(const ModcodEntry& e) {
    if (e.bits_per_symbol < 2 || e.bits_per_symbol > 5)
        throw InputError("bits_per_symbol must be in 2..5, got " +
                         std::to_string(e.bits_per_symbol));
    if (!(e.code_rate > 0.0 && e.code_rate <= 1.0))
        throw InputError("code_rate must lie in (0, 1]");
    if (!std::isfinite(e.snr_threshold_db)) throw InputError("snr_threshold_db must be finite");
}

void expect_header(const csv::Row& row, std::initializer_list<std::string_view> names) {
    if (row.fields.size() != names.size() ||
        !std::equal(names.begin(), names.end(), row.fields.begin()))
        throw ParseError(row.line, "unexpected header");
}

}  // namespace

ModcodTable::ModcodTable(std::vector<ModcodEntry> entries) {
    if (entries.empty()) throw InputError("MODCOD table is empty");
    std::set<std::pair<std::string, double>> seen;
    for (const auto& e : entries) {
        check_entry(e);
        if (!seen.emplace(e.modulation_name, e.code_rate).second)
            throw InputError("duplicate MODCOD " + e.modulation_name);
    }

    std::sort(entries.begin(), entries.end(), [](const ModcodEntry& a, const ModcodEntry& b) {
        return std::make_tuple(a.snr_threshold_db, -a.spectral_efficiency(), a.bits_per_symbol,
                               a.modulation_name) <
               std::make_tuple(b.snr_threshold_db, -b.spectral_efficiency(), b.bits_per_symbol,
                               b.modulation_name);
    });
    // An entry survives only if it beats every cheaper-threshold entry.
    for (auto& e : entries) {
        if (entries_.empty() || e.spectral_efficiency() > entries_.back().spectral_efficiency())
            entries_.push_back(std::move(e));
    }
}

const ModcodTable& ModcodTable::default_table() {
    static const ModcodTable table = [] {
        std::istringstream in{std::string(kDefaultModcodCsv)};
        return load_modcod_table(in);
    }();
    return table;
}

std::string_view default_modcod_csv() { return kDefaultModcodCsv; }

ModcodTable load_modcod_table(std::istream& source) {
    const auto rows = csv::read_rows(source);
    if (rows.empty()) throw ParseError(1, "empty MODCOD table");
    expect_header(rows.front(), {"modulation", "bits_per_symbol", "code_rate", "snr_threshold_db"});
    if (rows.size() == 1) throw ParseError(rows.front().line, "MODCOD table has no entries");

    std::vector<ModcodEntry> entries;
    std::set<std::pair<std::string, double>> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 4)
            throw ParseError(row.line, "expected 4 fields, got " + std::to_string(row.fields.size()));
        ModcodEntry e;
        e.modulation_name = row.fields[0];
        if (e.modulation_name.empty()) throw ParseError(row.line, "empty modulation name");
        e.bits_per_symbol =
            static_cast<int>(csv::parse_integer(row.fields[1], row.line, "bits_per_symbol"));
        e.code_rate = csv::parse_rational(row.fields[2], row.line, "code_rate");
        e.snr_threshold_db = csv::parse_real(row.fields[3], row.line, "snr_threshold_db");
        try {
            check_entry(e);
        } catch (const InputError& err) {
            throw ParseError(row.line, err.what());
        }
        if (!seen.emplace(e.modulation_name, e.code_rate).second)
            throw ParseError(row.line, "duplicate MODCOD (" + e.modulation_name + ", " +
                                           row.fields[2] + ")");
        entries.push_back(std::move(e));
    }
    return ModcodTable(std::move(entries));
}

double single_rate(double snr_db, const ModcodTable& table) {
    const auto& entries = table.entries();
    // First entry whose threshold exceeds the SNR; its predecessor is the best feasible.
    const auto it = std::upper_bound(
        entries.begin(), entries.end(), snr_db,
        [](double snr, const ModcodEntry& e) { return snr < e.snr_threshold_db; });
    if (it == entries.begin()) return 0.0;
    return std::prev(it)->spectral_efficiency();
}

PairRateTable::PairRateTable(std::vector<PairRateEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw InputError("pair rate table is empty");
    for (const auto& e : entries_) {
        if (!std::isfinite(e.hp_threshold_db) || !std::isfinite(e.lp_threshold_db))
            throw InputError("pair rate thresholds must be finite");
        if (!(e.rate > 0.0) || !std::isfinite(e.rate))
            throw InputError("pair rate must be positive and finite");
    }
}

double PairRateTable::lookup(double weak_db, double strong_db) const {
    double best = 0.0;
    for (const auto& e : entries_) {
        if (weak_db >= e.hp_threshold_db && strong_db >= e.lp_threshold_db)
            best = std::max(best, e.rate);
    }
    return best;
}

PairRateTable load_pair_rate_table(std::istream& source) {
    const auto rows = csv::read_rows(source);
    if (rows.empty()) throw ParseError(1, "empty pair rate table");
    expect_header(rows.front(), {"hp_snr_threshold_db", "lp_snr_threshold_db", "rate"});
    std::vector<PairRateEntry> entries;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 3)
            throw ParseError(row.line, "expected 3 fields, got " + std::to_string(row.fields.size()));
        PairRateEntry e{csv::parse_real(row.fields[0], row.line, "hp_snr_threshold_db"),
                        csv::parse_real(row.fields[1], row.line, "lp_snr_threshold_db"),
                        csv::parse_real(row.fields[2], row.line, "rate")};
        if (!(e.rate > 0.0)) throw ParseError(row.line, "rate must be positive");
        entries.push_back(e);
    }
    if (entries.empty()) throw ParseError(rows.front().line, "pair rate table has no entries");
    return PairRateTable(std::move(entries));
}

HierRateModel HierRateModel::capacity(double alpha_tolerance) {
    if (!(alpha_tolerance > 0.0)) throw InputError("alpha tolerance must be positive");
    return HierRateModel{HierRateKind::superposition_capacity, alpha_tolerance, std::nullopt};
}

HierRateModel HierRateModel::table(PairRateTable pairs) {
    return HierRateModel{HierRateKind::table_driven, 1e-10, std::move(pairs)};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double hp_layer_capacity(double alpha, double weak_linear_snr) {
    // The low-priority layer is interference for the weaker receiver.
    return std::log2(1.0 + alpha * weak_linear_snr / ((1.0 - alpha) * weak_linear_snr + 1.0));
}

double lp_layer_capacity(double alpha, double strong_linear_snr) {
    return std::log2(1.0 + (1.0 - alpha) * strong_linear_snr);
}

double hier_rate(double snr_i_db, double snr_j_db, const HierRateModel& model) {
    if (!std::isfinite(snr_i_db) || !std::isfinite(snr_j_db))
        throw InputError("hier_rate: SNR must be finite");
    const double weak_db = std::min(snr_i_db, snr_j_db);
    const double strong_db = std::max(snr_i_db, snr_j_db);

    if (model.kind == HierRateKind::table_driven) {
        if (!model.pair_table) throw InputError("table-driven pair model has no table");
        return model.pair_table->lookup(weak_db, strong_db);
    }
    if (!(model.alpha_tolerance > 0.0)) throw InputError("alpha tolerance must be positive");

    const double weak = db_to_linear(weak_db);
    const double strong = db_to_linear(strong_db);
    // HP rate rises and LP rate falls with alpha; the max-min sits at the crossing.
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > model.alpha_tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (hp_layer_capacity(mid, weak) < lp_layer_capacity(mid, strong))
            lo = mid;
        else
            hi = mid;
    }
    const double alpha = 0.5 * (lo + hi);
    return std::min(hp_layer_capacity(alpha, weak), lp_layer_capacity(alpha, strong));
}

}  // namespace hmgroup
