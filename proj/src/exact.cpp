#include "mlop/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mlop/lop.hpp"
#include "mlop/simplex_fit.hpp"

namespace mlop {

namespace {

constexpr double kZero = 1e-12;

void check_guards(const PreferenceMatrix& c, std::size_t g, const ExactConfig& cfg) {
    if (g < 1) throw ValidationError("g must be at least 1");
    // g = 1 is the classical LOP and goes to branch and bound instead.
    if (g == 1) return;
    if (c.n() > cfg.max_n || g > cfg.max_g)
        throw SizeGuardError("exact enumeration is limited to n <= " + std::to_string(cfg.max_n) + " and g <= " +
                             std::to_string(cfg.max_g) + " (got n = " + std::to_string(c.n()) + ", g = " +
                             std::to_string(g) + "); use the heuristic method instead");
}

}  // namespace

std::uint64_t multiset_count(std::uint64_t kinds, std::uint64_t g) {
    // C(kinds + g - 1, g), computed incrementally; exact while it fits.
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= g; ++i) result = result * (kinds + i - 1) / i;
    return result;
}

std::vector<LinearOrder> all_linear_orders(std::size_t n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<LinearOrder> out;
    do {
        out.emplace_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

ExactResult solve_exact(const PreferenceMatrix& c, const ExactConfig& cfg) {
    const std::size_t g = cfg.g;
    check_guards(c, g, cfg);

    if (g == 1) {
        const auto lop = lop_exact(BenefitMatrix::from_preferences(c));
        ExactResult result;
        result.solution = MixtureSolution{{lop.order}, {1.0}};
        result.objective = l1_objective(result.solution, c);
        result.proven = lop.proven;
        return result;
    }

    const auto orders = all_linear_orders(c.n());
    const std::size_t kinds = orders.size();
    const auto target = c.upper();

    std::vector<std::size_t> tuple(g, 0);
    std::vector<std::span<const std::uint8_t>> cols(g);
    std::vector<std::size_t> best_tuple;
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t visited = 0;

    // Non-decreasing index tuples enumerate each multiset exactly once.
    for (;;) {
        for (std::size_t i = 0; i < g; ++i) cols[i] = orders[tuple[i]].prec();
        double obj;
        if (g == 2)
            obj = weight_breakpoint_fit_g2(cols[0], cols[1], target).objective;
        else if (g == 3)
            obj = three_column_objective(cols[0], cols[1], cols[2], target);
        else
            obj = fit_weights(cols, target, {.canonical_ties = false}).objective;
        ++visited;
        if (obj < best - kZero) {
            best = obj;
            best_tuple = tuple;
            if (cfg.early_exit_at_zero && best <= kZero) break;
        }

        std::size_t pos = g;
        while (pos > 0 && tuple[pos - 1] == kinds - 1) --pos;
        if (pos == 0) break;
        const std::size_t next = tuple[pos - 1] + 1;
        for (std::size_t i = pos - 1; i < g; ++i) tuple[i] = next;
    }

    ExactResult result;
    std::vector<LinearOrder> chosen;
    for (std::size_t idx : best_tuple) chosen.push_back(orders[idx]);
    const auto fitres = g == 2 ? weight_breakpoint_fit_g2(WeightFitProblem::from_orders(chosen, c))
                               : fit_weights(WeightFitProblem::from_orders(chosen, c));
    MixtureSolution sol{std::move(chosen), fitres.weights};
    result.solution = canonicalize(sol);
    result.objective = l1_objective(result.solution, c);
    result.proven = true;
    result.multisets = visited;
    return result;
}

std::vector<std::pair<std::size_t, double>> opt_curve(const PreferenceMatrix& c, std::size_t g_max,
                                                      const ExactConfig& cfg) {
    for (std::size_t g = 1; g <= g_max; ++g) check_guards(c, g, cfg);
    std::vector<std::pair<std::size_t, double>> curve;
    for (std::size_t g = 1; g <= g_max; ++g) {
        double value;
        if (!curve.empty() && curve.back().second <= kZero) {
            value = curve.back().second;
        } else {
            ExactConfig step = cfg;
            step.g = g;
            value = solve_exact(c, step).objective;
            // A g-1 solution padded with a zero-weight group is feasible here.
            if (!curve.empty()) value = std::min(value, curve.back().second);
        }
        curve.emplace_back(g, value);
    }
    return curve;
}

}  // namespace mlop
