#include "hmgroup/matching_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hmgroup/errors.hpp"

namespace hmgroup {

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    SquareMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw InputError("matrix row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(rows.size()));
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.n_);
    }
    return m;
}

CostMatrix::CostMatrix(SquareMatrix m) : m_(std::move(m)) {
    const std::size_t n = m_.size();
    if (n == 0) throw InputError("cost matrix is empty");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = m_(i, j);
            if (!std::isfinite(v) || !(v > 0.0))
                throw InputError("cost entry (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ") must be finite and positive");
            if (j > i && v != m_(j, i))
                throw InputError("cost matrix is not symmetric at (" + std::to_string(i + 1) +
                                 "," + std::to_string(j + 1) + ")");
        }
    }
}

Assignment::Assignment(std::vector<std::size_t> partner) : partner_(std::move(partner)) {
    if (!is_involution(partner_)) throw InputError("partner array is not an involution");
}

Assignment Assignment::identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return Assignment(std::move(p));
}

bool Assignment::is_involution(std::span<const std::size_t> partner) {
    const std::size_t n = partner.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (partner[i] >= n || partner[partner[i]] != i) return false;
    }
    return true;
}

std::size_t Assignment::pair_count() const {
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < size(); ++i) pairs += partner_[i] > i;
    return pairs;
}

SquareMatrix Assignment::to_matrix() const {
    SquareMatrix x(size());
    for (std::size_t i = 0; i < size(); ++i) x(i, partner_[i]) = 1.0;
    return x;
}

PermutationAssignment::PermutationAssignment(std::vector<std::size_t> sigma)
    : sigma_(std::move(sigma)) {
    std::vector<bool> hit(sigma_.size(), false);
    for (const auto j : sigma_) {
        if (j >= sigma_.size() || hit[j]) throw InputError("mapping is not a permutation");
        hit[j] = true;
    }
}

std::optional<Assignment> PermutationAssignment::as_assignment() const {
    if (!is_involution()) return std::nullopt;
    return Assignment(sigma_);
}

CostMatrix build_cost_matrix(std::span<const Receiver> receivers, const ModcodTable& table,
                             const HierRateModel& model) {
    const std::size_t n = receivers.size();
    if (n == 0) throw InputError("no receivers");
    std::vector<double> single(n);
    for (std::size_t i = 0; i < n; ++i) {
        single[i] = single_rate(receivers[i].snr_db, table);
        if (!(single[i] > 0.0)) throw UnschedulableError(i);
    }

    SquareMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c(i, i) = 1.0 / single[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double pair = hier_rate(receivers[i].snr_db, receivers[j].snr_db, model);
            double cost = 0.0;
            if (pair > 0.0) {
                cost = 1.0 / (2.0 * pair);
            } else if (model.kind == HierRateKind::table_driven) {
                cost = 0.5 * (1.0 / single[i] + 1.0 / single[j]);
            } else {
                throw UnschedulableError(i);
            }
            c(i, j) = cost;
            c(j, i) = cost;
        }
    }
    return CostMatrix(std::move(c));
}

double assignment_cost(const SquareMatrix& c, std::span<const std::size_t> mapping) {
    if (mapping.size() != c.size()) throw InputError("assignment size does not match matrix");
    double total = 0.0;
    for (std::size_t i = 0; i < mapping.size(); ++i) total += c(i, mapping[i]);
    return total;
}

double assignment_cost(const CostMatrix& c, const Assignment& x) {
    return assignment_cost(c.matrix(), x.partner());
}

double assignment_cost(const CostMatrix& c, const PermutationAssignment& x) {
    return assignment_cost(c.matrix(), x.sigma());
}

double spectrum_efficiency(const CostMatrix& c, const Assignment& x) {
    return 1.0 / assignment_cost(c, x);
}

boost::multiprecision::cpp_int count_strategies(std::size_t n) {
    if (n == 0) throw InputError("count_strategies: n must be at least 1");
    boost::multiprecision::cpp_int prev = 1;  // s_1
    boost::multiprecision::cpp_int curr = 2;  // s_2
    if (n == 1) return prev;
    for (std::size_t k = 3; k <= n; ++k) {
        boost::multiprecision::cpp_int next = curr + (k - 1) * prev;
        prev = std::move(curr);
        curr = std::move(next);
    }
    return curr;
}

InvolutionEnumerator::InvolutionEnumerator(std::size_t n, std::size_t cap)
    : n_(n), partner_(n, kUnset) {
    if (n == 0) throw InputError("involution enumeration needs n >= 1");
    if (n > cap)
        throw CapExceededError("enumerating involutions of " + std::to_string(n) +
                               " receivers exceeds the cap of " + std::to_string(cap) +
                               "; raise the cap explicitly if the " +
                               count_strategies(n).str() + " strategies are really wanted");
    stack_.reserve(n);
}

void InvolutionEnumerator::assign(std::size_t i, std::size_t j) {
    partner_[i] = j;
    partner_[j] = i;
    stack_.push_back(i);
}

void InvolutionEnumerator::descend() {
    for (std::size_t i = 0; i < n_; ++i) {
        if (partner_[i] == kUnset) assign(i, i);
    }
}

bool InvolutionEnumerator::backtrack() {
    while (!stack_.empty()) {
        const std::size_t i = stack_.back();
        stack_.pop_back();
        const std::size_t j = partner_[i];
        partner_[i] = kUnset;
        partner_[j] = kUnset;
        for (std::size_t k = j + 1; k < n_; ++k) {
            if (partner_[k] == kUnset) {
                assign(i, k);
                return true;
            }
        }
    }
    return false;
}

bool InvolutionEnumerator::next() {
    if (!started_) {
        started_ = true;
    } else if (!backtrack()) {
        current_.reset();
        return false;
    }
    descend();
    current_.emplace(partner_);
    return true;
}

Optimum<Assignment> brute_force_optimal_symmetric(const CostMatrix& c, std::size_t cap) {
    InvolutionEnumerator e(c.size(), cap);
    std::optional<Optimum<Assignment>> best;
    while (e.next()) {
        const double cost = assignment_cost(c, e.current());
        // Lexicographic enumeration order: strict '<' keeps the first of equals.
        if (!best || cost < best->cost) best.emplace(Optimum<Assignment>{e.current(), cost});
    }
    return *best;
}

Optimum<PermutationAssignment> brute_force_optimal_permutation(const SquareMatrix& c) {
    const std::size_t n = c.size();
    if (n == 0) throw InputError("empty matrix");
    if (n > kPermutationBruteForceCap)
        throw CapExceededError("permutation brute force is limited to n <= " +
                               std::to_string(kPermutationBruteForceCap) + ", got " +
                               std::to_string(n));
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    std::vector<std::size_t> best_sigma = sigma;
    double best_cost = assignment_cost(c, sigma);
    while (std::next_permutation(sigma.begin(), sigma.end())) {
        const double cost = assignment_cost(c, sigma);
        if (cost < best_cost) {
            best_cost = cost;
            best_sigma = sigma;
        }
    }
    return {PermutationAssignment(std::move(best_sigma)), best_cost};
}

}  // namespace hmgroup
