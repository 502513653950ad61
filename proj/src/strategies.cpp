#include "hmgroup/strategies.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "hmgroup/errors.hpp"

namespace hmgroup {

namespace {

/// `order` lists receiver indices from weakest to strongest.
Assignment pair_extremes(const std::vector<std::size_t>& order) {
    const std::size_t n = order.size();
    std::vector<std::size_t> partner(n);
    for (std::size_t k = 0; k < n; ++k) partner[order[k]] = order[n - 1 - k];
    return Assignment(std::move(partner));
}

struct Candidate {
    Assignment assignment;
    double cost;
    CandidateSource source;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.assignment.partner() < b.assignment.partner();
}

void check_config(const PerturbConfig& cfg) {
    if (!(cfg.sigma > 0.0)) throw InputError("sigma must be positive");
    if (cfg.max_retries < 0) throw InputError("max_retries must be non-negative");
}

}  // namespace

std::string_view to_string(CandidateSource source) {
    switch (source) {
        case CandidateSource::hungarian: return "hungarian";
        case CandidateSource::perturbed: return "perturbed";
        case CandidateSource::time_sharing: return "time_sharing";
        case CandidateSource::largest_diff: return "largest_diff";
    }
    return "unknown";
}

SquareMatrix perturb(const CostMatrix& c, double sigma, std::uint64_t seed) {
    if (!(sigma > 0.0)) throw InputError("perturb: sigma must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    const std::size_t n = c.size();
    SquareMatrix out = c.matrix();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = std::max(0.0, c(i, j) + noise(rng));
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

Assignment time_sharing(std::size_t n) {
    if (n == 0) throw InputError("time_sharing: n must be at least 1");
    return Assignment::identity(n);
}

Assignment largest_diff_matching(std::span<const Receiver> receivers) {
    if (receivers.empty()) throw InputError("largest_diff_matching: no receivers");
    std::vector<std::size_t> order(receivers.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return receivers[a].snr_db < receivers[b].snr_db;
    });
    return pair_extremes(order);
}

Assignment largest_diff_matching(const CostMatrix& c) {
    std::vector<std::size_t> order(c.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return c(a, a) > c(b, b); });
    return pair_extremes(order);
}

MatchingReport quasi_optimal_matching(const CostMatrix& c, const PerturbConfig& cfg,
                                      const Assignment& largest_diff_baseline) {
    check_config(cfg);
    if (largest_diff_baseline.size() != c.size())
        throw InputError("baseline assignment size does not match cost matrix");

    MatchingReport report;
    const auto exact = hungarian_solve(c);
    report.upper_bound_cost = exact.cost;
    report.upper_bound_permutation = exact.permutation;

    const Assignment ts = time_sharing(c.size());
    report.time_sharing_cost = assignment_cost(c, ts);
    report.largest_diff_cost = assignment_cost(c, largest_diff_baseline);

    // Solver candidates go first so an identical baseline does not take the credit.
    std::vector<Candidate> candidates;
    if (auto x = exact.permutation.as_assignment()) {
        candidates.push_back({*x, exact.cost, CandidateSource::hungarian});
        report.success = true;
    } else {
        for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
            report.retries_used = attempt + 1;
            const auto trial = hungarian_solve(
                perturb(c, cfg.sigma, cfg.seed + static_cast<std::uint64_t>(attempt)));
            if (auto x = trial.permutation.as_assignment()) {
                candidates.push_back({*x, assignment_cost(c, *x), CandidateSource::perturbed});
                report.success = true;
                break;
            }
        }
    }

    candidates.push_back({ts, report.time_sharing_cost, CandidateSource::time_sharing});
    candidates.push_back(
        {largest_diff_baseline, report.largest_diff_cost, CandidateSource::largest_diff});

    const auto best = std::min_element(candidates.begin(), candidates.end(), better);
    report.symmetric_assignment = best->assignment;
    report.symmetric_cost = best->cost;
    report.gap_fraction = best->cost / report.upper_bound_cost - 1.0;
    report.source = best->source;
    return report;
}

MatchingReport quasi_optimal_matching(const CostMatrix& c, const PerturbConfig& cfg,
                                      std::span<const Receiver> receivers) {
    return quasi_optimal_matching(c, cfg, largest_diff_matching(receivers));
}

MatchingReport quasi_optimal_matching(const CostMatrix& c, const PerturbConfig& cfg) {
    return quasi_optimal_matching(c, cfg, largest_diff_matching(c));
}

}  // namespace hmgroup
