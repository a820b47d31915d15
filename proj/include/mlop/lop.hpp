#ifndef MLOP_LOP_HPP
#define MLOP_LOP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mlop/core.hpp"

namespace mlop {

/// Dense n x n benefit matrix: b(r, s) is gained when r is ranked before s.
/// Entries may be any finite real; the diagonal is ignored.
class BenefitMatrix {
public:
    BenefitMatrix() = default;
    explicit BenefitMatrix(std::size_t n) : n_(n), b_(n * n, 0.0) {}
    BenefitMatrix(std::size_t n, std::vector<double> row_major);

    static BenefitMatrix from_preferences(const PreferenceMatrix& c);

    std::size_t n() const { return n_; }
    double operator()(std::size_t r, std::size_t s) const { return b_[r * n_ + s]; }
    double& operator()(std::size_t r, std::size_t s) { return b_[r * n_ + s]; }

    /// Sum of b(r, s) over all pairs with r ranked before s.
    double value(const LinearOrder& order) const;

private:
    std::size_t n_ = 0;
    std::vector<double> b_;
};

struct LopResult {
    LinearOrder order;
    double value = 0.0;
    bool proven = false;
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kUnlimitedNodes = ~std::uint64_t{0};

/// Branch-and-bound over rank positions, filled from the front. A node's
/// bound is its fixed value plus max(b_rs, b_sr) summed over the pairs of
/// still-unplaced items. Items are tried in index order, so among equal
/// optima the lexicographically smallest permutation is returned. Prefixes
/// covering the same item set are pruned unless they strictly improve on
/// an earlier one.
///
/// `node_budget` caps the number of expanded nodes. When it runs out the
/// best incumbent is returned with proven == false. The search starts from
/// lop_heuristic's order, or from `start` if that is better.
LopResult lop_exact(const BenefitMatrix& b, std::uint64_t node_budget = kUnlimitedNodes,
                    const std::optional<LinearOrder>& start = std::nullopt);

/// Row-minus-column-sum construction followed by insertion local search to
/// a fixed point. `restarts` extra random starting orders are drawn from
/// `seed`; the best local optimum wins. The result is insertion-local-optimal.
LopResult lop_heuristic(const BenefitMatrix& b, std::uint64_t seed = 0, int restarts = 0);

/// Improves `order` in place by insertion moves until no single relocation
/// gains more than 1e-12. Returns the final value.
double insertion_local_search(const BenefitMatrix& b, std::vector<int>& order);

}  // namespace mlop

#endif
