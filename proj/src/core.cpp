#include "mlop/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mlop {

PreferenceMatrix::PreferenceMatrix(std::size_t n, std::vector<double> upper)
    : n_(n), upper_(std::move(upper)) {
    if (n_ < 2) throw ValidationError("preference matrix needs at least 2 items");
    if (upper_.size() != num_pairs(n_))
        throw DimensionError("upper triangle has " + std::to_string(upper_.size()) +
                             " entries, expected " + std::to_string(num_pairs(n_)));
    for (double v : upper_) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw ValidationError("preference entry " + std::to_string(v) + " outside [0, 1]");
    }
}

PreferenceMatrix PreferenceMatrix::from_full(const std::vector<std::vector<double>>& full) {
    const std::size_t n = full.size();
    std::vector<double> upper;
    upper.reserve(num_pairs(n));
    for (std::size_t r = 0; r < n; ++r) {
        if (full[r].size() != n) throw DimensionError("full matrix is not square");
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = r + 1; s < n; ++s) {
            const double sum = full[r][s] + full[s][r];
            if (!(std::abs(sum - 1.0) <= kNormalizationTolerance)) {
                std::ostringstream msg;
                msg << "entries (" << r + 1 << "," << s + 1 << ") and (" << s + 1 << "," << r + 1
                    << ") sum to " << sum << ", not 1";
                throw ValidationError(msg.str());
            }
            upper.push_back(full[r][s]);
        }
    }
    return PreferenceMatrix(n, std::move(upper));
}

LinearOrder::LinearOrder(std::vector<int> perm) : perm_(std::move(perm)), pos_(perm_.size(), -1) {
    const int n = static_cast<int>(perm_.size());
    for (int k = 0; k < n; ++k) {
        const int item = perm_[k];
        if (item < 0 || item >= n || pos_[item] != -1)
            throw ValidationError("ranking is not a permutation of 1.." + std::to_string(n));
        pos_[item] = k;
    }
    prec_.resize(num_pairs(perm_.size()));
    std::size_t idx = 0;
    for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s) prec_[idx++] = pos_[r] < pos_[s] ? 1 : 0;
}

LinearOrder LinearOrder::identity(std::size_t n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    return LinearOrder(std::move(perm));
}

LinearOrder LinearOrder::from_precedence(std::size_t n, std::span<const std::uint8_t> prec) {
    if (prec.size() != num_pairs(n)) throw DimensionError("precedence vector length mismatch");
    // An item's position equals the number of items preceding it.
    std::vector<int> pos(n, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s) ++pos[prec[pair_index(r, s, n)] ? s : r];
    std::vector<int> perm(n, -1);
    for (std::size_t item = 0; item < n; ++item) {
        if (perm[pos[item]] != -1) throw ValidationError("precedence vector is not transitive");
        perm[pos[item]] = static_cast<int>(item);
    }
    LinearOrder order(std::move(perm));
    if (!std::equal(prec.begin(), prec.end(), order.prec_.begin()))
        throw ValidationError("precedence vector is not transitive");
    return order;
}

LinearOrder LinearOrder::reversed() const {
    return LinearOrder(std::vector<int>(perm_.rbegin(), perm_.rend()));
}

std::string LinearOrder::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < perm_.size(); ++k) {
        if (k) out += '>';
        out += std::to_string(perm_[k] + 1);
    }
    return out;
}

void MixtureSolution::validate() const {
    if (orders.empty()) throw ValidationError("mixture has no groups");
    if (orders.size() != weights.size())
        throw DimensionError("mixture has " + std::to_string(orders.size()) + " orders but " +
                             std::to_string(weights.size()) + " weights");
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (orders[i].n() != orders.front().n()) throw DimensionError("orders differ in size");
        if (!(weights[i] >= 0.0)) throw ValidationError("negative mixture weight");
        sum += weights[i];
    }
    if (std::abs(sum - 1.0) > kTolerance) throw ValidationError("mixture weights do not sum to 1");
}

double lop_value(const LinearOrder& order, const PreferenceMatrix& c) {
    if (order.n() != c.n()) throw DimensionError("order and matrix sizes differ");
    const auto perm = order.perm();
    double value = 0.0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b) value += c(perm[a], perm[b]);
    return value;
}

MixturePoint mixture_point(const MixtureSolution& sol) {
    sol.validate();
    MixturePoint p(num_pairs(sol.n()), 0.0);
    for (std::size_t i = 0; i < sol.groups(); ++i) {
        const auto prec = sol.orders[i].prec();
        for (std::size_t k = 0; k < p.size(); ++k) p[k] += sol.weights[i] * prec[k];
    }
    return p;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionError("vector lengths differ");
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sum += std::abs(a[k] - b[k]);
    return sum;
}

double l1_objective(const MixtureSolution& sol, const PreferenceMatrix& c) {
    if (sol.n() != c.n()) throw DimensionError("solution and matrix sizes differ");
    return l1_distance(c.upper(), mixture_point(sol));
}

double max_form_value(const MixtureSolution& sol, const PreferenceMatrix& c) {
    return static_cast<double>(c.pairs()) - l1_objective(sol, c);
}

double fit_from_objective(double objective, std::size_t n) {
    return 1.0 - objective / static_cast<double>(num_pairs(n));
}

double fit(const MixtureSolution& sol, const PreferenceMatrix& c) {
    return fit_from_objective(l1_objective(sol, c), c.n());
}

std::size_t kendall_distance(const LinearOrder& a, const LinearOrder& b) {
    if (a.n() != b.n()) throw DimensionError("orders differ in size");
    const auto pa = a.prec();
    const auto pb = b.prec();
    std::size_t d = 0;
    for (std::size_t k = 0; k < pa.size(); ++k) d += pa[k] != pb[k];
    return d;
}

MixtureSolution canonicalize(const MixtureSolution& sol) {
    sol.validate();
    std::vector<std::size_t> idx(sol.groups());
    std::iota(idx.begin(), idx.end(), 0);
    // Weights are compared on a 1e-12 grid so LP round-off does not split ties.
    auto key = [&](std::size_t i) { return std::llround(sol.weights[i] * 1e12); };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto ka = key(a);
        const auto kb = key(b);
        if (ka != kb) return ka > kb;
        const auto pa = sol.orders[a].prec();
        const auto pb = sol.orders[b].prec();
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    });
    MixtureSolution out;
    for (std::size_t i : idx) {
        out.orders.push_back(sol.orders[i]);
        out.weights.push_back(sol.weights[i]);
    }
    return out;
}

}  // namespace mlop
