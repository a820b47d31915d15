#ifndef MLOP_TESTS_FIXTURES_HPP
#define MLOP_TESTS_FIXTURES_HPP

#include <mlop/core.hpp>
#include <mlop/rng.hpp>

#include <vector>

namespace fx {

// c12=c13=c14=0.9, c23=0.5, c24=c34=0.9
inline mlop::PreferenceMatrix example1() { return {4, {0.9, 0.9, 0.9, 0.5, 0.9, 0.9}}; }

inline std::vector<mlop::LinearOrder> example3_orders() {
    return {mlop::LinearOrder({0, 1, 2, 3}), mlop::LinearOrder({0, 2, 1, 3}), mlop::LinearOrder({3, 2, 1, 0})};
}

inline mlop::PreferenceMatrix example5() { return {3, {0.7, 0.8, 0.4}}; }
inline mlop::PreferenceMatrix example6() { return {3, {0.3, 0.9, 0.2}}; }

inline std::vector<double> random_upper(std::size_t n, mlop::Rng& rng, bool on_grid = true) {
    std::vector<double> u(n * (n - 1) / 2);
    for (auto& v : u) v = on_grid ? static_cast<double>(rng.below(1001)) / 1000.0 : rng.uniform();
    return u;
}

inline mlop::PreferenceMatrix random_matrix(std::size_t n, mlop::Rng& rng, bool on_grid = true) {
    return {n, random_upper(n, rng, on_grid)};
}

inline mlop::LinearOrder random_order(std::size_t n, mlop::Rng& rng) {
    std::vector<int> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
    rng.shuffle(std::span<int>(p));
    return mlop::LinearOrder(p);
}

inline std::vector<int> to_vec(const mlop::LinearOrder& o) { return {o.perm().begin(), o.perm().end()}; }

}  // namespace fx

#endif
