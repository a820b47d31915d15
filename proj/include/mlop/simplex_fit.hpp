#ifndef MLOP_SIMPLEX_FIT_HPP
#define MLOP_SIMPLEX_FIT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mlop/core.hpp"

namespace mlop {

/// Fixed precedence vectors (one per group) and the target upper triangle.
struct WeightFitProblem {
    std::vector<std::vector<std::uint8_t>> columns;
    std::vector<double> target;

    static WeightFitProblem from_orders(std::span<const LinearOrder> orders, const PreferenceMatrix& c);
};

struct WeightFit {
    std::vector<double> weights;
    double objective = 0.0;
};

struct FitOptions {
    // Among alternative optima pick the lexicographically largest sorted
    // weight vector (ties by column order). Costs extra LP solves when the
    // optimal face is not a single point.
    bool canonical_ties = true;
};

/// Minimizes sum_k |target_k - sum_i w_i columns[i][k]| over the probability
/// simplex with a dense primal simplex (Bland's rule). Exact up to round-off.
WeightFit fit_weights(const WeightFitProblem& prob, FitOptions opts = {});

/// Same, over borrowed columns. Columns need not be precedence vectors of
/// linear orders; any 0/1 (or real) columns work.
WeightFit fit_weights(std::span<const std::span<const std::uint8_t>> columns, std::span<const double> target,
                      FitOptions opts = {});

/// g == 2 fast path: the objective is piecewise linear in w_1 with kinks at
/// target values where the two columns differ, so the breakpoints and {0, 1}
/// are evaluated directly. Same tie rule as fit_weights.
WeightFit weight_breakpoint_fit_g2(const WeightFitProblem& prob);
WeightFit weight_breakpoint_fit_g2(std::span<const std::uint8_t> first, std::span<const std::uint8_t> second,
                                   std::span<const double> target);

/// sum_k |target_k - sum_i w_i columns[i][k]|
/// Optimal objective for exactly three columns, without the weights. Each
/// row then depends on a single weight (pattern e_i gives w_i, its
/// complement 1 - w_i), so the fit is separable and solved by taking the
/// cheapest slope segments until the weights sum to one.
double three_column_objective(std::span<const std::uint8_t> x1, std::span<const std::uint8_t> x2,
                              std::span<const std::uint8_t> x3, std::span<const double> target);

double weighted_residual(std::span<const std::span<const std::uint8_t>> columns, std::span<const double> weights,
                         std::span<const double> target);

}  // namespace mlop

#endif
