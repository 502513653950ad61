#include "hmgroup/channel_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "hmgroup/errors.hpp"

namespace hmgroup {

namespace {

void check_model(const BeamModel& m) {
    if (!std::isfinite(m.snr_max_db)) throw InputError("snr_max_db must be finite");
    if (!(m.edge_loss_db >= 0.0) || !std::isfinite(m.edge_loss_db))
        throw InputError("edge_loss_db must be finite and non-negative");
    if (!(m.weather_mean_db >= 0.0) || !std::isfinite(m.weather_mean_db))
        throw InputError("weather_mean_db must be finite and non-negative");
    if (m.n_receivers == 0) throw InputError("n_receivers must be at least 1");
}

struct TrialOutcome {
    TrialRecord record;
    std::vector<std::size_t> ranks;
    std::map<Strategy, Assignment> groupings;
};

TrialOutcome run_trial(const BeamModel& base, std::size_t t, const PerturbConfig& cfg,
                       const ModcodTable& table, const HierRateModel& rate_model) {
    TrialOutcome out;
    out.record.index = t;

    BeamModel model = base;
    model.seed = base.seed + t;
    std::optional<double> floor;
    if (model.outage == OutagePolicy::redraw) floor = table.min_threshold_db();
    const auto receivers = sample_receivers(model, floor);

    std::optional<CostMatrix> costs;
    try {
        costs.emplace(build_cost_matrix(receivers, table, rate_model));
    } catch (const UnschedulableError& e) {
        out.record.skipped = true;
        out.record.skip_reason = e.what();
        return out;
    }
    const CostMatrix& c = *costs;

    PerturbConfig trial_cfg = cfg;
    trial_cfg.seed = cfg.seed + t * (static_cast<std::uint64_t>(cfg.max_retries) + 1);
    const Assignment largest = largest_diff_matching(receivers);
    const MatchingReport report = quasi_optimal_matching(c, trial_cfg, largest);

    auto& eff = out.record.efficiency;
    eff[Strategy::time_sharing] = 1.0 / report.time_sharing_cost;
    eff[Strategy::largest_diff] = 1.0 / report.largest_diff_cost;
    eff[Strategy::quasi_optimal] = 1.0 / *report.symmetric_cost;
    eff[Strategy::upper_bound] = 1.0 / report.upper_bound_cost;
    out.record.gap_fraction = *report.gap_fraction;
    out.record.heuristic_success = report.success;
    out.record.retries_used = report.retries_used;

    out.ranks = snr_ranks(receivers);
    out.groupings.emplace(Strategy::time_sharing, time_sharing(receivers.size()));
    out.groupings.emplace(Strategy::largest_diff, largest);
    out.groupings.emplace(Strategy::quasi_optimal, *report.symmetric_assignment);
    return out;
}

}  // namespace

std::vector<Receiver> sample_receivers(const BeamModel& model, std::optional<double> floor_db) {
    check_model(model);
    if (floor_db && *floor_db > model.snr_max_db)
        throw InputError("beam-centre SNR is below the service floor; no receiver can be served");

    std::mt19937_64 rng(model.seed);
    std::uniform_real_distribution<double> position(0.0, 1.0);
    std::exponential_distribution<double> weather(
        model.weather_mean_db > 0.0 ? 1.0 / model.weather_mean_db : 1.0);

    std::vector<Receiver> receivers(model.n_receivers);
    for (std::size_t i = 0; i < receivers.size(); ++i) {
        double snr = 0.0;
        do {
            const double u = position(rng);
            const double w = model.weather_mean_db > 0.0 ? weather(rng) : 0.0;
            snr = model.snr_max_db - model.edge_loss_db * u * u - w;
        } while (floor_db && snr < *floor_db);
        receivers[i] = Receiver{i, snr};
    }
    return receivers;
}

std::string_view to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::time_sharing: return "time_sharing";
        case Strategy::largest_diff: return "largest_diff";
        case Strategy::quasi_optimal: return "quasi_optimal";
        case Strategy::upper_bound: return "upper_bound";
    }
    return "unknown";
}

std::vector<std::size_t> snr_ranks(const std::vector<Receiver>& receivers) {
    std::vector<std::size_t> order(receivers.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return receivers[a].snr_db < receivers[b].snr_db;
    });
    std::vector<std::size_t> rank(receivers.size());
    for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
    return rank;
}

SimulationSummary run_campaign(const BeamModel& model, std::size_t trials,
                               const PerturbConfig& cfg, const ModcodTable& table,
                               const HierRateModel& rate_model, CampaignOptions options) {
    check_model(model);
    if (trials == 0) throw InputError("trials must be at least 1");
    if (!(cfg.sigma > 0.0)) throw InputError("sigma must be positive");
    if (cfg.max_retries < 0) throw InputError("max_retries must be non-negative");
    if (model.outage == OutagePolicy::redraw && table.min_threshold_db() > model.snr_max_db)
        throw InputError("beam-centre SNR is below every MODCOD threshold");

    std::vector<TrialOutcome> outcomes(trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t t = next++; t < trials; t = next++) {
            try {
                outcomes[t] = run_trial(model, t, cfg, table, rate_model);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(trials));
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    SimulationSummary summary;
    summary.model = model;
    summary.trials = trials;
    const std::size_t n = model.n_receivers;
    std::map<Strategy, std::vector<double>> gains;
    std::map<Strategy, std::vector<std::size_t>> counts;
    for (const auto s : {Strategy::time_sharing, Strategy::largest_diff, Strategy::quasi_optimal})
        counts[s].assign(n * n, 0);

    for (auto& outcome : outcomes) {
        const auto& rec = outcome.record;
        if (rec.skipped) {
            ++summary.skipped;
        } else {
            ++summary.completed;
            ++(rec.heuristic_success ? summary.success_count : summary.failure_count);
            const double base = rec.efficiency.at(Strategy::time_sharing);
            for (const auto s : kAllStrategies) gains[s].push_back(rec.efficiency.at(s) / base - 1.0);
            for (const auto& [s, x] : outcome.groupings) {
                auto& cell = counts[s];
                for (std::size_t i = 0; i < n; ++i)
                    ++cell[outcome.ranks[i] * n + outcome.ranks[x(i)]];
            }
        }
        summary.records.push_back(std::move(outcome.record));
    }

    for (const auto s : kAllStrategies) {
        const auto& g = gains[s];
        GainStats stats;
        if (!g.empty()) {
            stats.mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
            const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
            stats.min = *lo;
            stats.max = *hi;
        }
        summary.gains[s] = stats;
    }
    for (const auto& [s, cell] : counts) {
        SquareMatrix p(n);
        if (summary.completed > 0) {
            const auto total = static_cast<double>(summary.completed);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) p(i, j) = static_cast<double>(cell[i * n + j]) / total;
        }
        summary.pair_probability.emplace(s, std::move(p));
    }
    return summary;
}

}  // namespace hmgroup
