#include "mlop/simplex_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace mlop {

WeightFitProblem WeightFitProblem::from_orders(std::span<const LinearOrder> orders, const PreferenceMatrix& c) {
    WeightFitProblem prob;
    prob.target.assign(c.upper().begin(), c.upper().end());
    for (const auto& o : orders) {
        if (o.n() != c.n()) throw DimensionError("order and matrix sizes differ");
        prob.columns.emplace_back(o.prec().begin(), o.prec().end());
    }
    return prob;
}

double weighted_residual(std::span<const std::span<const std::uint8_t>> columns, std::span<const double> weights,
                         std::span<const double> target) {
    double sum = 0.0;
    for (std::size_t k = 0; k < target.size(); ++k) {
        double p = 0.0;
        for (std::size_t i = 0; i < columns.size(); ++i) p += weights[i] * columns[i][k];
        sum += std::abs(target[k] - p);
    }
    return sum;
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr double kTieTol = 1e-9;
constexpr int kMaxPivots = 1'000'000;

// Dense tableau for
//   min sum_k (up_k + down_k)
//   s.t. sum_i x_ik w_i + up_k - down_k = t_k   (k < m)
//        sum_i w_i = 1
//        w, up, down >= 0
// with an extra objective row kept in sync by every pivot.
class L1SimplexTableau {
public:
    L1SimplexTableau(std::span<const std::span<const std::uint8_t>> columns, std::span<const double> target)
        : g_(columns.size()), m_(target.size()), rows_(m_ + 1), cols_(g_ + 2 * m_), width_(cols_ + 1),
          t_((rows_ + 1) * width_, 0.0), basis_(rows_), banned_(cols_, false) {
        for (std::size_t k = 0; k < m_; ++k) {
            for (std::size_t i = 0; i < g_; ++i) at(k, i) = columns[i][k];
            at(k, g_ + k) = 1.0;
            at(k, g_ + m_ + k) = -1.0;
            at(k, cols_) = target[k];
        }
        for (std::size_t i = 0; i < g_; ++i) at(m_, i) = 1.0;
        at(m_, cols_) = 1.0;

        // Start at the best single vertex; each residual row then has a
        // feasible sign for its slack.
        std::size_t start = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < g_; ++i) {
            double d = 0.0;
            for (std::size_t k = 0; k < m_; ++k) d += std::abs(target[k] - columns[i][k]);
            if (d < best) {
                best = d;
                start = i;
            }
        }
        pivot(m_, start);
        for (std::size_t k = 0; k < m_; ++k) pivot(k, at(k, cols_) >= 0.0 ? g_ + k : g_ + m_ + k);
    }

    void set_objective(const std::vector<double>& cost) {
        double* obj = row(rows_);
        std::fill(obj, obj + width_, 0.0);
        for (std::size_t j = 0; j < cols_; ++j) obj[j] = cost[j];
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cb = cost[basis_[r]];
            if (cb == 0.0) continue;
            const double* src = row(r);
            for (std::size_t j = 0; j < width_; ++j) obj[j] -= cb * src[j];
        }
    }

    std::vector<double> l1_cost() const {
        std::vector<double> cost(cols_, 0.0);
        std::fill(cost.begin() + static_cast<std::ptrdiff_t>(g_), cost.end(), 1.0);
        return cost;
    }

    std::vector<double> weight_cost(std::size_t i) const {
        std::vector<double> cost(cols_, 0.0);
        cost[i] = -1.0;
        return cost;
    }

    // Bland's rule: lowest-index improving column, lowest-index leaving variable.
    void solve() {
        for (int it = 0; it < kMaxPivots; ++it) {
            const double* obj = row(rows_);
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!banned_[j] && obj[j] < -kCostTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return;
            std::size_t leave = rows_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows_; ++r) {
                const double a = at(r, enter);
                if (a <= kPivotTol) continue;
                const double ratio = std::max(at(r, cols_), 0.0) / a;
                if (ratio < best_ratio - 1e-15 ||
                    (ratio <= best_ratio + 1e-15 && leave < rows_ && basis_[r] < basis_[leave])) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
            if (leave == rows_) throw Error("weight fit LP is unbounded");  // cannot happen: objective >= 0
            pivot(leave, enter);
        }
        throw Error("weight fit LP exceeded the pivot limit");
    }

    // Fixes every nonbasic column with a strictly positive reduced cost at
    // zero; what remains is the optimal face of the current objective.
    // Returns false if no alternative optimum exists.
    bool restrict_to_optimal_face() {
        std::vector<bool> basic(cols_, false);
        for (std::size_t b : basis_) basic[b] = true;
        const double* obj = row(rows_);
        bool free_direction = false;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (basic[j] || banned_[j]) continue;
            if (obj[j] > kCostTol)
                banned_[j] = true;
            else
                free_direction = true;
        }
        return free_direction;
    }

    double objective() const { return -at(rows_, cols_); }

    std::vector<double> weights() const {
        std::vector<double> w(g_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            if (basis_[r] < g_) w[basis_[r]] = std::max(at(r, cols_), 0.0);
        const double sum = std::accumulate(w.begin(), w.end(), 0.0);
        for (double& x : w) x /= sum;
        return w;
    }

private:
    double& at(std::size_t r, std::size_t j) { return t_[r * width_ + j]; }
    double at(std::size_t r, std::size_t j) const { return t_[r * width_ + j]; }
    double* row(std::size_t r) { return t_.data() + r * width_; }
    const double* row(std::size_t r) const { return t_.data() + r * width_; }

    void pivot(std::size_t r, std::size_t j) {
        double* pr = row(r);
        const double inv = 1.0 / pr[j];
        for (std::size_t c = 0; c < width_; ++c) pr[c] *= inv;
        pr[j] = 1.0;
        for (std::size_t q = 0; q <= rows_; ++q) {
            if (q == r) continue;
            double* pq = row(q);
            const double f = pq[j];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < width_; ++c) pq[c] -= f * pr[c];
            pq[j] = 0.0;
            if (std::abs(pq[cols_]) < 1e-14) pq[cols_] = 0.0;
        }
        basis_[r] = j;
    }

    std::size_t g_, m_, rows_, cols_, width_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
    std::vector<bool> banned_;
};

}  // namespace

WeightFit fit_weights(std::span<const std::span<const std::uint8_t>> columns, std::span<const double> target,
                      FitOptions opts) {
    const std::size_t g = columns.size();
    if (g == 0) throw ValidationError("weight fit needs at least one column");
    for (const auto& col : columns)
        if (col.size() != target.size()) throw DimensionError("column and target lengths differ");
    if (g == 1) {
        std::vector<double> w{1.0};
        return {w, weighted_residual(columns, w, target)};
    }

    L1SimplexTableau tab(columns, target);
    tab.set_objective(tab.l1_cost());
    tab.solve();

    if (opts.canonical_ties && tab.restrict_to_optimal_face()) {
        std::vector<bool> fixed(g, false);
        for (std::size_t stage = 0; stage + 1 < g; ++stage) {
            std::size_t pick = g;
            double pick_value = -1.0;
            for (std::size_t i = 0; i < g; ++i) {
                if (fixed[i]) continue;
                L1SimplexTableau probe = tab;
                probe.set_objective(probe.weight_cost(i));
                probe.solve();
                const double v = -probe.objective();
                if (v > pick_value + kTieTol) {
                    pick_value = v;
                    pick = i;
                }
            }
            fixed[pick] = true;
            tab.set_objective(tab.weight_cost(pick));
            tab.solve();
            if (!tab.restrict_to_optimal_face()) break;
        }
    }

    WeightFit out;
    out.weights = tab.weights();
    out.objective = weighted_residual(columns, out.weights, target);
    return out;
}

WeightFit fit_weights(const WeightFitProblem& prob, FitOptions opts) {
    std::vector<std::span<const std::uint8_t>> cols(prob.columns.begin(), prob.columns.end());
    return fit_weights(cols, prob.target, opts);
}

WeightFit weight_breakpoint_fit_g2(std::span<const std::uint8_t> first, std::span<const std::uint8_t> second,
                                   std::span<const double> target) {
    if (first.size() != target.size() || second.size() != target.size())
        throw DimensionError("column and target lengths differ");
    std::vector<double> candidates{1.0, 0.0};
    for (std::size_t k = 0; k < target.size(); ++k) {
        if (first[k] == second[k]) continue;
        candidates.push_back(first[k] ? target[k] : 1.0 - target[k]);
    }
    auto eval = [&](double t) {
        double sum = 0.0;
        for (std::size_t k = 0; k < target.size(); ++k)
            sum += std::abs(target[k] - (t * first[k] + (1.0 - t) * second[k]));
        return sum;
    };
    double best_t = 1.0;
    double best = eval(1.0);
    for (double t : candidates) {
        const double v = eval(t);
        const bool better = v < best - 1e-12;
        const bool tie = !better && v <= best + 1e-12;
        const double spread = std::max(t, 1.0 - t);
        const double best_spread = std::max(best_t, 1.0 - best_t);
        if (better || (tie && (spread > best_spread + 1e-12 || (spread >= best_spread - 1e-12 && t > best_t + 1e-12)))) {
            best = v;
            best_t = t;
        }
    }
    return {{best_t, 1.0 - best_t}, best};
}

WeightFit weight_breakpoint_fit_g2(const WeightFitProblem& prob) {
    if (prob.columns.size() != 2) throw ValidationError("breakpoint fit requires exactly two columns");
    return weight_breakpoint_fit_g2(prob.columns[0], prob.columns[1], prob.target);
}

double three_column_objective(std::span<const std::uint8_t> x1, std::span<const std::uint8_t> x2,
                              std::span<const std::uint8_t> x3, std::span<const double> target) {
    const std::size_t m = target.size();
    if (x1.size() != m || x2.size() != m || x3.size() != m) throw DimensionError("column length differs from target");

    // Breakpoints per weight; F_i(w) = sum over its targets t of |t - w|.
    // Called once per multiset in exact enumeration, so buffers are reused.
    thread_local std::array<std::vector<double>, 3> t;
    thread_local std::vector<std::pair<double, double>> segments;  // (slope, length)
    for (auto& v : t) v.clear();
    segments.clear();
    double value = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double c = target[k];
        switch (x1[k] | (x2[k] << 1) | (x3[k] << 2)) {
            case 0: value += c; break;
            case 7: value += 1.0 - c; break;
            case 1: t[0].push_back(c); break;
            case 6: t[0].push_back(1.0 - c); break;
            case 2: t[1].push_back(c); break;
            case 5: t[1].push_back(1.0 - c); break;
            case 4: t[2].push_back(c); break;
            default: t[2].push_back(1.0 - c); break;
        }
    }

    // Start from w = 0 and buy mass along the cheapest slopes.
    for (auto& v : t) {
        std::sort(v.begin(), v.end());
        const double k = static_cast<double>(v.size());
        double prev = 0.0;
        for (std::size_t j = 0; j <= v.size(); ++j) {
            const double end = j < v.size() ? v[j] : 1.0;
            segments.emplace_back(2.0 * static_cast<double>(j) - k, end - prev);
            prev = end;
            if (j < v.size()) value += v[j];
        }
    }
    std::sort(segments.begin(), segments.end());
    double remaining = 1.0;
    for (const auto& [slope, len] : segments) {
        const double take = std::min(len, remaining);
        value += slope * take;
        remaining -= take;
        if (remaining <= 0.0) break;
    }
    return std::max(value, 0.0);
}

}  // namespace mlop
