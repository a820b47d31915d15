#ifndef MLOP_EXACT_HPP
#define MLOP_EXACT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mlop/core.hpp"

namespace mlop {

struct ExactConfig {
    std::size_t g = 1;
    std::size_t max_n = 6;
    std::size_t max_g = 3;
    bool early_exit_at_zero = true;
};

struct ExactResult {
    MixtureSolution solution;
    double objective = 0.0;
    bool proven = false;
    std::uint64_t multisets = 0;  // multisets evaluated
};

/// All n! linear orders in lexicographic permutation order.
std::vector<LinearOrder> all_linear_orders(std::size_t n);

/// Exhaustive search over multisets of g linear orders (non-decreasing index
/// tuples), each scored by the optimal simplex weights. Throws
/// SizeGuardError when n or g exceed the configured guards. g = 1 is the
/// classical LOP and is solved by branch and bound without the n guard.
ExactResult solve_exact(const PreferenceMatrix& c, const ExactConfig& cfg);

/// (g, OPT_g) for g = 1..g_max. cfg.g is ignored.
std::vector<std::pair<std::size_t, double>> opt_curve(const PreferenceMatrix& c, std::size_t g_max,
                                                      const ExactConfig& cfg);

/// Number of multisets of size g drawn from `kinds` kinds, C(kinds+g-1, g).
std::uint64_t multiset_count(std::uint64_t kinds, std::uint64_t g);

}  // namespace mlop

#endif
