#include "mlop/lop.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "mlop/rng.hpp"

namespace mlop {

BenefitMatrix::BenefitMatrix(std::size_t n, std::vector<double> row_major) : n_(n), b_(std::move(row_major)) {
    if (b_.size() != n_ * n_) throw DimensionError("benefit matrix must have n*n entries");
    for (double v : b_)
        if (!std::isfinite(v)) throw ValidationError("benefit matrix has a non-finite entry");
}

BenefitMatrix BenefitMatrix::from_preferences(const PreferenceMatrix& c) {
    BenefitMatrix b(c.n());
    for (std::size_t r = 0; r < c.n(); ++r)
        for (std::size_t s = 0; s < c.n(); ++s)
            if (r != s) b(r, s) = c(r, s);
    return b;
}

double BenefitMatrix::value(const LinearOrder& order) const {
    if (order.n() != n_) throw DimensionError("order and benefit matrix sizes differ");
    const auto perm = order.perm();
    double v = 0.0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t c = a + 1; c < perm.size(); ++c) v += (*this)(perm[a], perm[c]);
    return v;
}

namespace {

double value_of(const BenefitMatrix& b, const std::vector<int>& perm) {
    double v = 0.0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t c = a + 1; c < perm.size(); ++c) v += b(perm[a], perm[c]);
    return v;
}

double tie_eps(double v) { return 1e-12 * (1.0 + std::abs(v)); }

constexpr std::size_t kMemoCap = std::size_t{1} << 22;

class BranchAndBound {
public:
    BranchAndBound(const BenefitMatrix& b, std::uint64_t budget, std::vector<int> incumbent, double inc_value)
        : b_(b), n_(b.n()), budget_(budget), best_(std::move(incumbent)), best_value_(inc_value), pair_max_(n_ * n_) {
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t s = 0; s < n_; ++s)
                if (r != s) pair_max_[r * n_ + s] = std::max(b(r, s), b(s, r));
        prefix_.reserve(n_);
    }

    // Returns true if the search space was exhausted within the budget.
    bool run() {
        double rem = 0.0;
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t s = r + 1; s < n_; ++s) rem += pair_max_[r * n_ + s];
        const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
        return dfs(all, 0.0, rem, 0);
    }

    const std::vector<int>& best() const { return best_; }
    double best_value() const { return best_value_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    // lex: -1 prefix < incumbent prefix, 0 equal, +1 greater.
    bool dfs(std::uint64_t unplaced, double value, double rem, int lex) {
        if (unplaced == 0) {
            const double eps = tie_eps(best_value_);
            if (value > best_value_ + eps || (value >= best_value_ - eps && lex < 0)) {
                best_ = prefix_;
                best_value_ = value;
            }
            return true;
        }
        if (nodes_ >= budget_) return false;
        ++nodes_;

        const std::size_t depth = prefix_.size();
        for (std::size_t j = 0; j < n_; ++j) {
            if (!(unplaced >> j & 1)) continue;
            const std::uint64_t rest = unplaced & ~(std::uint64_t{1} << j);
            double gain = 0.0;
            double lost = 0.0;
            for (std::size_t u = 0; u < n_; ++u) {
                if (!(rest >> u & 1)) continue;
                gain += b_(j, u);
                lost += pair_max_[j * n_ + u];
            }
            const double child_value = value + gain;
            const double child_rem = rem - lost;
            int child_lex = lex;
            if (lex == 0) child_lex = static_cast<int>(j) < best_[depth] ? -1 : (static_cast<int>(j) > best_[depth] ? 1 : 0);

            const double bound = child_value + child_rem;
            const double eps = tie_eps(best_value_);
            if (bound < best_value_ - eps) continue;
            if (bound <= best_value_ + eps && child_lex >= 0) continue;

            // Earlier prefixes over the same item set are lexicographically smaller.
            if (rest != 0) {
                auto it = memo_.find(rest);
                if (it != memo_.end()) {
                    if (child_value <= it->second + tie_eps(it->second)) continue;
                    it->second = child_value;
                } else if (memo_.size() < kMemoCap) {
                    memo_.emplace(rest, child_value);
                }
            }

            prefix_.push_back(static_cast<int>(j));
            const bool done = dfs(rest, child_value, child_rem, child_lex);
            prefix_.pop_back();
            if (!done) return false;
        }
        return true;
    }

    const BenefitMatrix& b_;
    std::size_t n_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<int> best_;
    double best_value_;
    std::vector<double> pair_max_;
    std::vector<int> prefix_;
    std::unordered_map<std::uint64_t, double> memo_;
};

std::vector<int> construct_by_net_flow(const BenefitMatrix& b) {
    const std::size_t n = b.n();
    std::vector<double> score(n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
            if (r != s) score[r] += b(r, s) - b(s, r);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int c) { return score[a] > score[c]; });
    return order;
}

}  // namespace

double insertion_local_search(const BenefitMatrix& b, std::vector<int>& order) {
    const std::size_t n = order.size();
    std::vector<int> pos(n);
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t item = 0; item < n; ++item) {
            for (std::size_t k = 0; k < n; ++k) pos[order[k]] = static_cast<int>(k);
            const std::size_t p = pos[item];
            const int x = static_cast<int>(item);
            double best_delta = 0.0;
            std::size_t best_q = p;
            double delta = 0.0;
            for (std::size_t q = p; q-- > 0;) {
                const int y = order[q];
                delta += b(x, y) - b(y, x);
                if (delta > best_delta + 1e-12) {
                    best_delta = delta;
                    best_q = q;
                }
            }
            delta = 0.0;
            for (std::size_t q = p + 1; q < n; ++q) {
                const int y = order[q];
                delta += b(y, x) - b(x, y);
                if (delta > best_delta + 1e-12) {
                    best_delta = delta;
                    best_q = q;
                }
            }
            if (best_q != p) {
                order.erase(order.begin() + static_cast<std::ptrdiff_t>(p));
                order.insert(order.begin() + static_cast<std::ptrdiff_t>(best_q), x);
                improved = true;
            }
        }
    }
    return value_of(b, order);
}

LopResult lop_heuristic(const BenefitMatrix& b, std::uint64_t seed, int restarts) {
    if (b.n() == 0) throw ValidationError("benefit matrix is empty");
    std::vector<int> best = construct_by_net_flow(b);
    double best_value = insertion_local_search(b, best);
    Rng rng(seed);
    for (int k = 0; k < restarts; ++k) {
        std::vector<int> cand(b.n());
        std::iota(cand.begin(), cand.end(), 0);
        rng.shuffle(std::span<int>(cand));
        const double v = insertion_local_search(b, cand);
        if (v > best_value + tie_eps(best_value) || (v >= best_value - tie_eps(best_value) && cand < best)) {
            best = std::move(cand);
            best_value = v;
        }
    }
    return {LinearOrder(std::move(best)), best_value, false, 0};
}

LopResult lop_exact(const BenefitMatrix& b, std::uint64_t node_budget, const std::optional<LinearOrder>& start) {
    if (b.n() == 0) throw ValidationError("benefit matrix is empty");
    LopResult seed = lop_heuristic(b);
    if (start) {
        if (start->n() != b.n()) throw DimensionError("start order and benefit matrix sizes differ");
        const double v = b.value(*start);
        if (v > seed.value + tie_eps(seed.value) || (v >= seed.value - tie_eps(seed.value) && *start < seed.order))
            seed = {*start, v, false, 0};
    }
    if (b.n() <= 1) return {seed.order, seed.value, true, 0};
    if (b.n() > 64) return seed;

    std::vector<int> perm(seed.order.perm().begin(), seed.order.perm().end());
    BranchAndBound bb(b, node_budget, std::move(perm), seed.value);
    const bool proven = bb.run();
    LinearOrder best(bb.best());
    const double value = b.value(best);
    return {std::move(best), value, proven, bb.nodes()};
}

}  // namespace mlop
