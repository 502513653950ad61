#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmgroup/matching_core.hpp"
#include "hmgroup/rate_model.hpp"
#include "hmgroup/strategies.hpp"

namespace hmgroup {

/// What a campaign does with terminals that cannot decode the most robust
/// MODCOD.
enum class OutagePolicy {
    /// Record the whole trial as skipped.
    skip_trial,
    /// Redraw such terminals, i.e. sample only receivers inside the service area.
    redraw,
};

/// Synthetic spot-beam population: SNR = snr_max - edge_loss * u^2 - W with
/// u ~ U(0,1) the normalised radial position and W ~ Exp(mean weather_mean).
struct BeamModel {
    double snr_max_db = 10.0;
    double edge_loss_db = 3.0;
    double weather_mean_db = 2.0;
    std::size_t n_receivers = 500;
    std::uint64_t seed = 0;
    OutagePolicy outage = OutagePolicy::redraw;
};

/// Deterministic for a given model. With `floor_db`, any draw below the floor
/// is redrawn; throws InputError if the floor exceeds snr_max_db.
std::vector<Receiver> sample_receivers(const BeamModel& model,
                                       std::optional<double> floor_db = std::nullopt);

enum class Strategy { time_sharing, largest_diff, quasi_optimal, upper_bound };

inline constexpr Strategy kAllStrategies[] = {Strategy::time_sharing, Strategy::largest_diff,
                                              Strategy::quasi_optimal, Strategy::upper_bound};

std::string_view to_string(Strategy strategy);

struct GainStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct TrialRecord {
    std::size_t index = 0;
    bool skipped = false;
    std::string skip_reason;
    /// Average spectrum efficiency per strategy (bits/symbol); the upper
    /// bound entry is 1 / Hungarian cost.
    std::map<Strategy, double> efficiency;
    double gap_fraction = 0.0;
    bool heuristic_success = false;
    int retries_used = 0;
};

struct SimulationSummary {
    BeamModel model;
    std::size_t trials = 0;
    std::size_t completed = 0;
    std::size_t skipped = 0;
    std::size_t success_count = 0;
    std::size_t failure_count = 0;
    /// Gain relative to time sharing, over completed trials.
    std::map<Strategy, GainStats> gains;
    /// Pr(X[i][j] = 1) over completed trials with receivers ranked by
    /// ascending SNR. Keyed for the three groupings (not the bound).
    std::map<Strategy, SquareMatrix> pair_probability;
    std::vector<TrialRecord> records;

    const SquareMatrix& quasi_optimal_pair_probability() const {
        return pair_probability.at(Strategy::quasi_optimal);
    }
};

struct CampaignOptions {
    /// Worker threads; 0 picks the hardware concurrency. Results do not
    /// depend on this value.
    unsigned threads = 0;
};

/// Trial t samples receivers with seed model.seed + t and perturbs with base
/// seed cfg.seed + t * (cfg.max_retries + 1).
SimulationSummary run_campaign(const BeamModel& model, std::size_t trials,
                               const PerturbConfig& cfg, const ModcodTable& table,
                               const HierRateModel& rate_model, CampaignOptions options = {});

/// Ranks receivers by ascending SNR, ties by index: rank[i] is the sorted
/// position of receiver i.
std::vector<std::size_t> snr_ranks(const std::vector<Receiver>& receivers);

}  // namespace hmgroup
