#ifndef MLOP_GEOMETRY_HPP
#define MLOP_GEOMETRY_HPP

#include <array>
#include <span>
#include <vector>

#include "mlop/core.hpp"

namespace mlop {

/// All n! precedence vectors of the linear ordering polytope, in
/// lexicographic permutation order.
struct PolytopeVertexSet {
    std::size_t n = 0;
    std::vector<LinearOrder> orders;
    std::vector<std::vector<std::uint8_t>> vertices;
};

inline constexpr std::size_t kMaxVertexN = 8;
inline constexpr std::size_t kMaxMembershipN = 7;
inline constexpr std::size_t kMaxSaturationN = 4;

PolytopeVertexSet enumerate_vertices(std::size_t n);

struct CycleResidual {
    std::array<std::size_t, 3> triple;  // 0-based r < s < t
    double residual;                    // x_rs - x_rt + x_st

    bool violated() const { return residual < -kTolerance || residual > 1.0 + kTolerance; }
};

/// One entry per triple r < s < t, in lexicographic order.
std::vector<CycleResidual> cycle_residuals(std::span<const double> point, std::size_t n);

struct Projection {
    std::vector<double> point;
    double distance = 0.0;
};

/// L1 projection onto the full polytope via an LP over all vertex weights.
Projection l1_projection_full(std::span<const double> point, std::size_t n);

/// True iff the point is a convex combination of vertices (distance <= 1e-9).
bool polytope_membership(std::span<const double> point, std::size_t n);

/// Smallest g whose exact optimum reaches the projection distance (1e-9).
/// Throws Error if the bound g* <= C(n,2) + 1 (or <= C(n,2) for points
/// outside the polytope) is ever violated.
std::size_t caratheodory_saturation(std::span<const double> point, std::size_t n);

}  // namespace mlop

#endif
