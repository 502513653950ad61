#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hmgroup/rate_model.hpp"

namespace hmgroup {

/// A terminal. `index` is 0-based; user-facing output adds one.
struct Receiver {
    std::size_t index = 0;
    double snr_db = 0.0;
};

/// Dense row-major n x n matrix of doubles. No invariants beyond shape.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    /// Throws InputError unless every row has `rows.size()` entries.
    static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    bool operator==(const SquareMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Symmetric matrix of inverse-rate costs (symbols per bit): the diagonal is
/// 1/R_i, off-diagonal entries are 1/(2 R_ij^hm).
class CostMatrix {
public:
    /// Throws InputError unless the matrix is non-empty, symmetric and all
    /// entries are finite and strictly positive.
    explicit CostMatrix(SquareMatrix m);

    static CostMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        return CostMatrix(SquareMatrix::from_rows(rows));
    }

    std::size_t size() const { return m_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const SquareMatrix& matrix() const { return m_; }

private:
    SquareMatrix m_;
};

/// A grouping: partner[i] == i for a single receiver, otherwise the paired
/// receiver. Always an involution (symmetric permutation matrix).
class Assignment {
public:
    /// Throws InputError if `partner` is not an involution on {0..n-1}.
    explicit Assignment(std::vector<std::size_t> partner);

    static Assignment identity(std::size_t n);
    static bool is_involution(std::span<const std::size_t> partner);

    std::size_t size() const { return partner_.size(); }
    std::size_t operator()(std::size_t i) const { return partner_[i]; }
    const std::vector<std::size_t>& partner() const { return partner_; }

    std::size_t pair_count() const;
    std::size_t single_count() const { return size() - 2 * pair_count(); }
    /// 0/1 matrix with X[i][partner[i]] = 1.
    SquareMatrix to_matrix() const;

    auto operator<=>(const Assignment&) const = default;

private:
    std::vector<std::size_t> partner_;
};

/// Any bijection on {0..n-1}; the Hungarian solver's output.
class PermutationAssignment {
public:
    /// Throws InputError if `sigma` is not a bijection.
    explicit PermutationAssignment(std::vector<std::size_t> sigma);

    std::size_t size() const { return sigma_.size(); }
    std::size_t operator()(std::size_t i) const { return sigma_[i]; }
    const std::vector<std::size_t>& sigma() const { return sigma_; }

    bool is_involution() const { return Assignment::is_involution(sigma_); }
    /// Present iff the permutation is an involution.
    std::optional<Assignment> as_assignment() const;

    auto operator<=>(const PermutationAssignment&) const = default;

private:
    std::vector<std::size_t> sigma_;
};

/// Cost matrix for a receiver population. Throws UnschedulableError naming
/// the first receiver whose single rate is zero. Under the table-driven pair
/// model a pair without a usable entry is priced as its two singles.
CostMatrix build_cost_matrix(std::span<const Receiver> receivers, const ModcodTable& table,
                             const HierRateModel& model);

/// Sum over rows of c[i][x(i)], accumulated in row order.
double assignment_cost(const SquareMatrix& c, std::span<const std::size_t> mapping);
double assignment_cost(const CostMatrix& c, const Assignment& x);
double assignment_cost(const CostMatrix& c, const PermutationAssignment& x);

/// Average rate offered to every receiver: the inverse of the assignment cost.
double spectrum_efficiency(const CostMatrix& c, const Assignment& x);

/// Number of groupings of n receivers into singles and pairs (involution
/// count): s_1 = 1, s_2 = 2, s_n = s_{n-1} + (n-1) s_{n-2}.
boost::multiprecision::cpp_int count_strategies(std::size_t n);

inline constexpr std::size_t kDefaultEnumerationCap = 12;
inline constexpr std::size_t kPermutationBruteForceCap = 9;

/// Streams every involution on {0..n-1} exactly once, in lexicographic order
/// of the partner array. Holds O(n) state.
///
///     InvolutionEnumerator e(n);
///     while (e.next()) use(e.current());
class InvolutionEnumerator {
public:
    /// Throws InputError for n == 0, CapExceededError for n > cap.
    explicit InvolutionEnumerator(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

    bool next();
    const Assignment& current() const { return *current_; }

private:
    static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

    void descend();
    bool backtrack();
    void assign(std::size_t i, std::size_t j);

    std::size_t n_;
    std::vector<std::size_t> partner_;
    std::vector<std::size_t> stack_;  // receivers whose partner choice is open
    bool started_ = false;
    std::optional<Assignment> current_;
};

template <class T>
struct Optimum {
    T assignment;
    double cost;
};

/// Exhaustive minimum-cost involution. Ties go to the lexicographically
/// smallest partner array.
Optimum<Assignment> brute_force_optimal_symmetric(const CostMatrix& c,
                                                   std::size_t cap = kDefaultEnumerationCap);

/// Exhaustive minimum-cost permutation over all n! candidates (n <= 9).
/// Ties go to the lexicographically smallest permutation.
Optimum<PermutationAssignment> brute_force_optimal_permutation(const SquareMatrix& c);
inline Optimum<PermutationAssignment> brute_force_optimal_permutation(const CostMatrix& c) {
    return brute_force_optimal_permutation(c.matrix());
}

}  // namespace hmgroup
