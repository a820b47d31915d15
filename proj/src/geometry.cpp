#include "mlop/geometry.hpp"

#include <string>

#include "mlop/exact.hpp"
#include "mlop/simplex_fit.hpp"

namespace mlop {

namespace {

void guard(std::size_t n, std::size_t limit, const char* what) {
    if (n < 2 || n > limit)
        throw SizeGuardError(std::string(what) + " supports 2 <= n <= " + std::to_string(limit) + " (got n = " +
                             std::to_string(n) + ")");
}

void check_length(std::span<const double> point, std::size_t n) {
    if (point.size() != num_pairs(n))
        throw DimensionError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                             std::to_string(num_pairs(n)));
}

}  // namespace

PolytopeVertexSet enumerate_vertices(std::size_t n) {
    guard(n, kMaxVertexN, "vertex enumeration");
    PolytopeVertexSet set;
    set.n = n;
    set.orders = all_linear_orders(n);
    for (const auto& o : set.orders) set.vertices.emplace_back(o.prec().begin(), o.prec().end());
    return set;
}

std::vector<CycleResidual> cycle_residuals(std::span<const double> point, std::size_t n) {
    check_length(point, n);
    std::vector<CycleResidual> out;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s)
            for (std::size_t t = s + 1; t < n; ++t) {
                const double v = point[pair_index(r, s, n)] - point[pair_index(r, t, n)] + point[pair_index(s, t, n)];
                out.push_back({{r, s, t}, v});
            }
    return out;
}

Projection l1_projection_full(std::span<const double> point, std::size_t n) {
    guard(n, kMaxMembershipN, "L1 projection");
    check_length(point, n);
    const auto verts = enumerate_vertices(n);
    std::vector<std::span<const std::uint8_t>> cols(verts.vertices.begin(), verts.vertices.end());
    const auto fitres = fit_weights(cols, point, {.canonical_ties = false});
    Projection proj;
    proj.point.assign(point.size(), 0.0);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (fitres.weights[i] == 0.0) continue;
        for (std::size_t k = 0; k < point.size(); ++k) proj.point[k] += fitres.weights[i] * cols[i][k];
    }
    proj.distance = fitres.objective;
    return proj;
}

bool polytope_membership(std::span<const double> point, std::size_t n) {
    return l1_projection_full(point, n).distance <= kTolerance;
}

std::size_t caratheodory_saturation(std::span<const double> point, std::size_t n) {
    guard(n, kMaxSaturationN, "saturation analysis");
    check_length(point, n);
    const double target = l1_projection_full(point, n).distance;
    const bool inside = target <= kTolerance;
    const std::size_t limit = num_pairs(n) + 1;
    const PreferenceMatrix c(n, std::vector<double>(point.begin(), point.end()));

    ExactConfig cfg;
    cfg.max_n = kMaxSaturationN;
    cfg.max_g = limit;
    for (std::size_t g = 1; g <= limit; ++g) {
        cfg.g = g;
        const double opt = solve_exact(c, cfg).objective;
        if (opt <= target + kTolerance) {
            if (!inside && g > num_pairs(n))
                throw Error("saturation reached only at g = C(n,2) + 1 for a point outside the polytope");
            return g;
        }
    }
    throw Error("exact optimum never reached the projection distance within C(n,2) + 1 groups");
}

}  // namespace mlop
