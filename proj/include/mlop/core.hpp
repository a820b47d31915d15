#ifndef MLOP_CORE_HPP
#define MLOP_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlop {

// Error hierarchy. The CLI maps these onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct SizeGuardError : Error {
    using Error::Error;
};
struct InfeasibleError : Error {
    using Error::Error;
};

inline constexpr double kTolerance = 1e-9;
inline constexpr double kNormalizationTolerance = 1e-6;

constexpr std::size_t num_pairs(std::size_t n) { return n * (n - 1) / 2; }

// Row-major position of pair (r, s), r < s, in an upper-triangle vector.
constexpr std::size_t pair_index(std::size_t r, std::size_t s, std::size_t n) {
    return r * n - r * (r + 1) / 2 + (s - r - 1);
}

/// Normalized pairwise preference data. Only the strict upper triangle is
/// stored; c(s, r) = 1 - c(r, s) is derived.
class PreferenceMatrix {
public:
    PreferenceMatrix() = default;

    /// Throws ValidationError if any entry lies outside [0, 1].
    PreferenceMatrix(std::size_t n, std::vector<double> upper);

    /// Builds from a full n x n matrix. The diagonal is ignored; pairs with
    /// |c_rs + c_sr - 1| > 1e-6 are rejected.
    static PreferenceMatrix from_full(const std::vector<std::vector<double>>& full);

    std::size_t n() const { return n_; }
    std::size_t pairs() const { return upper_.size(); }
    std::span<const double> upper() const { return upper_; }

    /// Preference of item r over item s (0-based, r != s).
    double operator()(std::size_t r, std::size_t s) const {
        return r < s ? upper_[pair_index(r, s, n_)] : 1.0 - upper_[pair_index(s, r, n_)];
    }

    bool operator==(const PreferenceMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> upper_;
};

/// A permutation of 0-based items, most preferred first, together with its
/// precedence vector (entry for r < s is 1 iff r precedes s).
class LinearOrder {
public:
    LinearOrder() = default;
    /// Throws ValidationError unless perm is a bijection on {0..n-1}.
    explicit LinearOrder(std::vector<int> perm);

    static LinearOrder identity(std::size_t n);
    /// Inverse of prec(); throws ValidationError if the vector is intransitive.
    static LinearOrder from_precedence(std::size_t n, std::span<const std::uint8_t> prec);

    std::size_t n() const { return perm_.size(); }
    std::span<const int> perm() const { return perm_; }
    std::span<const std::uint8_t> prec() const { return prec_; }
    /// Rank position of each item.
    std::span<const int> position() const { return pos_; }
    bool precedes(std::size_t r, std::size_t s) const { return pos_[r] < pos_[s]; }

    LinearOrder reversed() const;
    std::string to_string() const;  // "1>2>3", 1-based

    bool operator==(const LinearOrder& o) const { return perm_ == o.perm_; }
    auto operator<=>(const LinearOrder& o) const { return perm_ <=> o.perm_; }

private:
    std::vector<int> perm_;
    std::vector<int> pos_;
    std::vector<std::uint8_t> prec_;
};

/// g linear orders plus simplex weights.
struct MixtureSolution {
    std::vector<LinearOrder> orders;
    std::vector<double> weights;

    std::size_t groups() const { return orders.size(); }
    std::size_t n() const { return orders.empty() ? 0 : orders.front().n(); }

    /// Throws ValidationError on a negative weight, a sum off 1 by more than
    /// 1e-9, an empty solution, or orders of differing size.
    void validate() const;
};

/// The convex combination p_rs = sum_i w_i x_rs^i of a solution's vertices.
using MixturePoint = std::vector<double>;

double lop_value(const LinearOrder& order, const PreferenceMatrix& c);
MixturePoint mixture_point(const MixtureSolution& sol);
double l1_distance(std::span<const double> a, std::span<const double> b);
double l1_objective(const MixtureSolution& sol, const PreferenceMatrix& c);
/// The maximization form: C(n,2) - l1_objective.
double max_form_value(const MixtureSolution& sol, const PreferenceMatrix& c);
double fit_from_objective(double objective, std::size_t n);
double fit(const MixtureSolution& sol, const PreferenceMatrix& c);
std::size_t kendall_distance(const LinearOrder& a, const LinearOrder& b);

/// Sorts groups by weight descending; equal weights are ordered by
/// ascending lexicographic precedence vector.
MixtureSolution canonicalize(const MixtureSolution& sol);

}  // namespace mlop

#endif
