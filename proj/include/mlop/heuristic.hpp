#ifndef MLOP_HEURISTIC_HPP
#define MLOP_HEURISTIC_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mlop/core.hpp"
#include "mlop/rng.hpp"
#include "mlop/simplex_fit.hpp"

namespace mlop {

struct HeuristicConfig {
    int n_starts = 10;
    int it_max = 12;
    double epsilon = 1e-5;
    // Branch-and-bound nodes allowed per ranking-update step, shared by all
    // inner LOP solves of that step. Stands in for a wall-clock cap; roughly
    // 1e6-1e7 nodes per second on current hardware.
    std::uint64_t step1_budget = 5'000'000;
    // Inner LOP solves are exact (up to step1_budget) for n at or below this;
    // above it each solve gets at most large_n_node_budget nodes on top of
    // the insertion heuristic.
    std::size_t exact_inner_max_n = 14;
    std::uint64_t large_n_node_budget = 50'000;
    // When (n!)^g is at most this, the ranking update enumerates all order
    // tuples jointly, which is the exact step; otherwise it falls back to
    // coordinate descent over groups. 0 disables the joint step.
    std::uint64_t joint_enum_limit = 200'000;
    std::uint64_t base_seed = 1;

    void validate() const;
};

struct IterationRecord {
    int iteration = 0;
    double after_rankings = 0.0;  // local objective after the ranking update
    double after_weights = 0.0;   // local objective after the weight update
};

struct StartTrace {
    std::uint64_t seed = 0;
    std::vector<double> initial_weights;
    std::vector<IterationRecord> iterations;
    double final_objective = 0.0;
};

struct HeuristicTrace {
    std::vector<StartTrace> starts;
    int total_iterations = 0;
    int best_start = -1;
};

struct HeuristicResult {
    MixtureSolution solution;
    double objective = 0.0;
    HeuristicTrace trace;
};

struct RankingStep {
    std::vector<LinearOrder> orders;
    double objective = 0.0;
    std::uint64_t nodes = 0;
    bool budget_exhausted = false;
};

/// Uniform draw from the probability simplex (normalized exponentials).
std::vector<double> random_simplex_weights(std::size_t g, Rng& rng);

/// Ranking update with the weights held fixed. Block coordinate descent over
/// groups: each group's order is re-solved as a classical LOP against the
/// residual left by the other groups, sweeping until a full pass gains
/// nothing. Zero-weight groups keep their order. Without an incumbent the
/// orders are built greedily, heaviest group first. The result never has a
/// larger objective than the incumbent.
RankingStep step_rankings(const PreferenceMatrix& c, std::span<const double> weights,
                          const std::optional<std::vector<LinearOrder>>& incumbent, const HeuristicConfig& cfg);

/// Weight update with the orders held fixed (exact LP).
WeightFit step_weights(const PreferenceMatrix& c, std::span<const LinearOrder> orders);

/// Multi-start alternating-direction matheuristic. Start k draws its initial
/// weights from mix_seed(base_seed, k). Deterministic for a given config.
HeuristicResult solve_heuristic(const PreferenceMatrix& c, std::size_t g, const HeuristicConfig& cfg = {});

}  // namespace mlop

#endif
