#include "mlop/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mlop/exact.hpp"
#include "mlop/lop.hpp"

namespace mlop {

namespace {

constexpr double kGain = 1e-12;

// Residual a_rs = c_rs - sum over the other groups of w_j x^j_rs. A group
// with no order yet counts as w_j / 2, its mean under a random order.
std::vector<double> residual_without(const PreferenceMatrix& c, std::span<const double> weights,
                                     const std::vector<std::optional<LinearOrder>>& orders, std::size_t skip) {
    std::vector<double> a(c.upper().begin(), c.upper().end());
    for (std::size_t j = 0; j < orders.size(); ++j) {
        if (j == skip) continue;
        if (!orders[j]) {
            for (double& x : a) x -= 0.5 * weights[j];
            continue;
        }
        const auto prec = orders[j]->prec();
        for (std::size_t k = 0; k < a.size(); ++k) a[k] -= weights[j] * prec[k];
    }
    return a;
}

// Placing r before s costs |a_rs - w|, otherwise |a_rs|. The LOP maximizes
// the negated cost, so the optimal LOP value is minus the L1 objective.
BenefitMatrix group_benefits(std::size_t n, std::span<const double> a, double w) {
    BenefitMatrix b(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = r + 1; s < n; ++s) {
            const double v = a[pair_index(r, s, n)];
            b(r, s) = -std::abs(v - w);
            b(s, r) = -std::abs(v);
        }
    }
    return b;
}

double residual_cost(std::span<const double> a, double w, const LinearOrder& order) {
    const auto prec = order.prec();
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sum += std::abs(a[k] - w * prec[k]);
    return sum;
}

// (n!)^g, or nullopt once it exceeds limit.
std::optional<std::uint64_t> tuple_count(std::size_t n, std::size_t g, std::uint64_t limit) {
    std::uint64_t fact = 1;
    for (std::size_t k = 2; k <= n; ++k) {
        fact *= k;
        if (fact > limit) return std::nullopt;
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < g; ++i) {
        total *= fact;
        if (total > limit) return std::nullopt;
    }
    return total;
}

// Exhaustive joint ranking update over the groups with positive weight;
// the rest keep their order. First strict minimum in lexicographic tuple
// order wins.
std::vector<LinearOrder> joint_rankings(const PreferenceMatrix& c, std::span<const double> weights,
                                        std::vector<LinearOrder> orders) {
    const auto all = all_linear_orders(c.n());
    const std::size_t m = c.pairs();
    std::vector<double> fixed(m, 0.0);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) {
            active.push_back(i);
        } else {
            const auto prec = orders[i].prec();
            for (std::size_t k = 0; k < m; ++k) fixed[k] += weights[i] * prec[k];
        }
    }

    std::vector<std::vector<double>> partial(active.size() + 1, fixed);
    std::vector<std::size_t> pick(active.size(), 0), best_pick;
    double best = std::numeric_limits<double>::infinity();
    const auto target = c.upper();

    auto descend = [&](auto&& self, std::size_t depth) -> void {
        if (depth == active.size()) {
            const double obj = l1_distance(target, partial[depth]);
            if (obj < best - kGain) {
                best = obj;
                best_pick = pick;
            }
            return;
        }
        const double w = weights[active[depth]];
        for (std::size_t o = 0; o < all.size(); ++o) {
            const auto prec = all[o].prec();
            for (std::size_t k = 0; k < m; ++k) partial[depth + 1][k] = partial[depth][k] + w * prec[k];
            pick[depth] = o;
            self(self, depth + 1);
        }
    };
    descend(descend, 0);
    for (std::size_t a = 0; a < active.size(); ++a) orders[active[a]] = all[best_pick[a]];
    return orders;
}

// Block coordinate descent: each group in turn is re-solved as a weighted LOP
// against the residual left by the others.
void bcd_rankings(const PreferenceMatrix& c, std::span<const double> weights,
                  const std::optional<std::vector<LinearOrder>>& incumbent, const HeuristicConfig& cfg,
                  RankingStep& step) {
    const std::size_t g = weights.size();
    const std::size_t n = c.n();
    std::uint64_t remaining = cfg.step1_budget;
    auto budget_for_call = [&]() {
        return n <= cfg.exact_inner_max_n ? remaining : std::min(remaining, cfg.large_n_node_budget);
    };
    auto charge = [&](std::uint64_t used) {
        step.nodes += used;
        remaining -= std::min(remaining, used);
    };

    auto construct = [&]() {
        std::vector<std::optional<LinearOrder>> orders(g);
        std::vector<std::size_t> by_weight(g);
        std::iota(by_weight.begin(), by_weight.end(), 0);
        std::stable_sort(by_weight.begin(), by_weight.end(),
                         [&](std::size_t x, std::size_t y) { return weights[x] > weights[y]; });
        for (std::size_t i : by_weight) {
            const auto a = residual_without(c, weights, orders, i);
            const auto res = lop_exact(group_benefits(n, a, weights[i]), budget_for_call());
            charge(res.nodes);
            orders[i] = res.order;
        }
        return orders;
    };

    auto descend = [&](std::vector<std::optional<LinearOrder>>& orders) {
        bool improved = true;
        while (improved && remaining > 0) {
            improved = false;
            for (std::size_t i = 0; i < g && remaining > 0; ++i) {
                if (weights[i] <= 0.0) continue;
                const auto a = residual_without(c, weights, orders, i);
                const double current = residual_cost(a, weights[i], *orders[i]);
                const auto res = lop_exact(group_benefits(n, a, weights[i]), budget_for_call(), orders[i]);
                charge(res.nodes);
                const double candidate = residual_cost(a, weights[i], res.order);
                if (candidate < current - kGain) {
                    orders[i] = res.order;
                    improved = true;
                }
            }
        }
    };

    auto value = [&](const std::vector<std::optional<LinearOrder>>& orders) {
        MixtureSolution sol;
        for (const auto& o : orders) sol.orders.push_back(*o);
        sol.weights.assign(weights.begin(), weights.end());
        return l1_distance(c.upper(), mixture_point(sol));
    };

    // Descend from a fresh construction, and from the incumbent if there is
    // one. Keep whichever ends lower.
    auto orders = construct();
    descend(orders);
    if (incumbent) {
        std::vector<std::optional<LinearOrder>> from_inc(g);
        for (std::size_t i = 0; i < g; ++i) {
            if ((*incumbent)[i].n() != n) throw DimensionError("incumbent order has the wrong size");
            from_inc[i] = (*incumbent)[i];
        }
        descend(from_inc);
        if (value(from_inc) <= value(orders)) orders = std::move(from_inc);
    }
    step.budget_exhausted = remaining == 0;
    for (auto& o : orders) step.orders.push_back(std::move(*o));
}


}  // namespace

void HeuristicConfig::validate() const {
    if (n_starts < 1) throw ValidationError("n_starts must be at least 1");
    if (it_max < 1) throw ValidationError("it_max must be at least 1");
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
}

std::vector<double> random_simplex_weights(std::size_t g, Rng& rng) {
    if (g < 1) throw ValidationError("g must be at least 1");
    if (g == 1) return {1.0};
    std::vector<double> w(g);
    for (double& x : w) x = -std::log(rng.uniform_open_zero());
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= sum;
    return w;
}

RankingStep step_rankings(const PreferenceMatrix& c, std::span<const double> weights,
                          const std::optional<std::vector<LinearOrder>>& incumbent, const HeuristicConfig& cfg) {
    const std::size_t g = weights.size();
    const std::size_t n = c.n();
    if (g == 0) throw ValidationError("no groups");
    if (incumbent && incumbent->size() != g) throw DimensionError("incumbent has the wrong number of orders");

    RankingStep step;
    if (auto tuples = tuple_count(n, g, std::min(cfg.joint_enum_limit, cfg.step1_budget))) {
        std::vector<LinearOrder> start = incumbent ? *incumbent : std::vector<LinearOrder>(g, LinearOrder::identity(n));
        for (const auto& o : start)
            if (o.n() != n) throw DimensionError("incumbent order has the wrong size");
        step.orders = joint_rankings(c, weights, std::move(start));
        step.nodes = *tuples;
    } else {
        bcd_rankings(c, weights, incumbent, cfg, step);
    }
    MixtureSolution sol{step.orders, std::vector<double>(weights.begin(), weights.end())};
    step.objective = l1_distance(c.upper(), mixture_point(sol));

    // Never hand back something worse than what came in.
    if (incumbent) {
        MixtureSolution old{*incumbent, sol.weights};
        const double old_obj = l1_distance(c.upper(), mixture_point(old));
        if (old_obj <= step.objective) {
            step.orders = *incumbent;
            step.objective = old_obj;
        }
    }
    return step;
}


WeightFit step_weights(const PreferenceMatrix& c, std::span<const LinearOrder> orders) {
    return fit_weights(WeightFitProblem::from_orders(orders, c));
}

HeuristicResult solve_heuristic(const PreferenceMatrix& c, std::size_t g, const HeuristicConfig& cfg) {
    cfg.validate();
    if (g < 1) throw ValidationError("g must be at least 1");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    HeuristicResult result;
    double best = kInf;
    std::vector<LinearOrder> best_orders;
    std::vector<double> best_weights;

    for (int k = 0; k < cfg.n_starts; ++k) {
        StartTrace trace;
        trace.seed = mix_seed(cfg.base_seed, static_cast<std::uint64_t>(k));
        Rng rng(trace.seed);
        std::vector<double> weights = random_simplex_weights(g, rng);
        trace.initial_weights = weights;

        std::optional<std::vector<LinearOrder>> orders;
        double local = kInf;
        for (int it = 1; it <= cfg.it_max; ++it) {
            const double at_start = local;

            auto ranked = step_rankings(c, weights, orders, cfg);
            if (ranked.objective < local - kGain) {
                orders = std::move(ranked.orders);
                local = ranked.objective;
            }
            IterationRecord rec{it, local, local};

            // Step 2 always refits the best orders of this start.
            auto fitted = step_weights(c, *orders);
            if (fitted.objective < local - kGain) {
                weights = std::move(fitted.weights);
                local = fitted.objective;
            }
            rec.after_weights = local;
            trace.iterations.push_back(rec);
            ++result.trace.total_iterations;

            if (std::abs(at_start - local) < cfg.epsilon) break;
        }

        trace.final_objective = local;
        if (local < best - kGain) {
            best = local;
            best_orders = *orders;
            best_weights = weights;
            result.trace.best_start = k;
        }
        result.trace.starts.push_back(std::move(trace));
    }

    result.solution = canonicalize(MixtureSolution{std::move(best_orders), std::move(best_weights)});
    result.objective = l1_objective(result.solution, c);
    return result;
}

}  // namespace mlop
