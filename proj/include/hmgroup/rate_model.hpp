#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hmgroup {

/// One (modulation, code rate) pair usable above an SNR threshold.
struct ModcodEntry {
    std::string modulation_name;
    int bits_per_symbol = 2;
    double code_rate = 1.0;
    double snr_threshold_db = 0.0;

    double spectral_efficiency() const { return bits_per_symbol * code_rate; }
};

/// Cleaned MODCOD set: thresholds and efficiencies both strictly increasing.
class ModcodTable {
public:
    /// Validates, sorts and drops dominated entries. Throws InputError when
    /// the input is empty or an entry is out of range.
    explicit ModcodTable(std::vector<ModcodEntry> entries);

    const std::vector<ModcodEntry>& entries() const { return entries_; }
    double min_threshold_db() const { return entries_.front().snr_threshold_db; }
    double max_efficiency() const { return entries_.back().spectral_efficiency(); }

    /// Bundled DVB-S2 set (QPSK..32APSK, eleven code rates) with synthetic
    /// thresholds where AWGN capacity equals 1.25x the spectral efficiency.
    static const ModcodTable& default_table();

private:
    std::vector<ModcodEntry> entries_;
};

/// CSV text of the bundled default table (header included).
std::string_view default_modcod_csv();

/// Parses `modulation,bits_per_symbol,code_rate,snr_threshold_db`. Errors
/// carry the 1-based row number.
ModcodTable load_modcod_table(std::istream& source);

/// Best efficiency among entries whose threshold is at or below `snr_db`;
/// 0 when the receiver cannot decode any entry.
double single_rate(double snr_db, const ModcodTable& table);

/// Externally computed hierarchical pair rates. A row is usable by a pair
/// whose weaker receiver reaches `hp_threshold_db` and whose stronger
/// receiver reaches `lp_threshold_db`; the pair gets the best usable rate.
struct PairRateEntry {
    double hp_threshold_db = 0.0;
    double lp_threshold_db = 0.0;
    double rate = 0.0;
};

class PairRateTable {
public:
    explicit PairRateTable(std::vector<PairRateEntry> entries);

    const std::vector<PairRateEntry>& entries() const { return entries_; }
    double lookup(double weak_db, double strong_db) const;

private:
    std::vector<PairRateEntry> entries_;
};

/// Parses `hp_snr_threshold_db,lp_snr_threshold_db,rate`.
PairRateTable load_pair_rate_table(std::istream& source);

enum class HierRateKind { superposition_capacity, table_driven };

struct HierRateModel {
    HierRateKind kind = HierRateKind::superposition_capacity;
    /// Bisection stops once the power-split bracket is narrower than this.
    double alpha_tolerance = 1e-10;
    std::optional<PairRateTable> pair_table;

    static HierRateModel capacity(double alpha_tolerance = 1e-10);
    static HierRateModel table(PairRateTable pairs);
};

/// Two-layer superposition rates for a given power split. `alpha` is the
/// fraction of power given to the high-priority (weaker receiver) layer.
double hp_layer_capacity(double alpha, double weak_linear_snr);
double lp_layer_capacity(double alpha, double strong_linear_snr);

/// Common rate delivered to both receivers of a hierarchically modulated
/// pair. Symmetric in its arguments. Throws InputError on non-finite SNR.
/// The table-driven model returns 0 when no pair entry is usable.
double hier_rate(double snr_i_db, double snr_j_db, const HierRateModel& model);

double db_to_linear(double db);

}  // namespace hmgroup
