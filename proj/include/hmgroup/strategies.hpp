#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "hmgroup/hungarian.hpp"
#include "hmgroup/matching_core.hpp"

namespace hmgroup {

struct PerturbConfig {
    double sigma = 1e-3;
    int max_retries = 50;
    std::uint64_t seed = 0;
};

/// Where the returned grouping came from.
enum class CandidateSource { hungarian, perturbed, time_sharing, largest_diff };

std::string_view to_string(CandidateSource source);

struct MatchingReport {
    double upper_bound_cost = 0.0;
    std::optional<PermutationAssignment> upper_bound_permutation;
    std::optional<Assignment> symmetric_assignment;
    std::optional<double> symmetric_cost;
    /// symmetric_cost / upper_bound_cost - 1
    std::optional<double> gap_fraction;
    int retries_used = 0;
    /// True iff the Hungarian method itself (unperturbed or perturbed)
    /// produced a symmetric assignment.
    bool success = false;
    CandidateSource source = CandidateSource::time_sharing;
    double time_sharing_cost = 0.0;
    double largest_diff_cost = 0.0;
};

/// C + eps with eps symmetric; upper-triangle entries (diagonal included) are
/// drawn row by row from N(0, sigma^2). Negative results are clamped to 0.
/// Throws InputError unless sigma > 0.
SquareMatrix perturb(const CostMatrix& c, double sigma, std::uint64_t seed);

/// All receivers single.
Assignment time_sharing(std::size_t n);

/// Sorts by ascending SNR (ties by index) and pairs sorted position k with
/// n+1-k; the median stays single when n is odd.
Assignment largest_diff_matching(std::span<const Receiver> receivers);

/// Same pairing rule with receivers ranked by their single-receiver cost
/// c[i][i] (descending cost == ascending rate); for inputs that carry no SNRs.
Assignment largest_diff_matching(const CostMatrix& c);

/// Solves the unperturbed problem for the upper bound. If that optimum is
/// not an involution, retries on perturbed copies (seed + attempt) until the
/// solver returns one or `max_retries` is spent. Perturbed hits are priced
/// on the original matrix. The cheapest of the symmetric hits and both
/// baselines is returned; ties go to the smaller partner array.
MatchingReport quasi_optimal_matching(const CostMatrix& c, const PerturbConfig& cfg,
                                      const Assignment& largest_diff_baseline);

MatchingReport quasi_optimal_matching(const CostMatrix& c, const PerturbConfig& cfg,
                                      std::span<const Receiver> receivers);

/// Baseline pairing taken from the cost diagonal.
MatchingReport quasi_optimal_matching(const CostMatrix& c, const PerturbConfig& cfg);

}  // namespace hmgroup
