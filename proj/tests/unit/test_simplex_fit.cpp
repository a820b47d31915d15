#include <doctest.h>

#include <mlop/exact.hpp>
#include <mlop/simplex_fit.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace mlop;

namespace {

std::vector<std::vector<double>> as_double(const WeightFitProblem& p) {
    std::vector<std::vector<double>> out;
    for (const auto& col : p.columns) out.emplace_back(col.begin(), col.end());
    return out;
}

}  // namespace

TEST_CASE("single column fit") {
    Rng rng(21);
    const auto c = fx::random_matrix(5, rng);
    const auto o = fx::random_order(5, rng);
    const auto fit = fit_weights(WeightFitProblem::from_orders(std::vector{o}, c));
    CHECK(fit.weights == std::vector<double>{1.0});
    CHECK(fit.objective == doctest::Approx(l1_objective({{o}, {1.0}}, c)));
}

TEST_CASE("Example 5 two-vertex fit") {
    const std::vector orders{LinearOrder({0, 2, 1}), LinearOrder({1, 2, 0})};
    const auto prob = WeightFitProblem::from_orders(orders, fx::example5());
    for (const auto& fit : {fit_weights(prob), weight_breakpoint_fit_g2(prob)}) {
        CHECK(fit.weights[0] == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(fit.weights[1] == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(fit.objective == doctest::Approx(0.2).epsilon(1e-12));
    }
}

TEST_CASE("Example 3 weights are recovered") {
    const auto orders = fx::example3_orders();
    const auto fit = fit_weights(WeightFitProblem::from_orders(orders, fx::example1()));
    CHECK(fit.objective == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.weights[1] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(fit.weights[2] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("identical columns resolve to (1,0)") {
    const auto o = LinearOrder({2, 0, 1, 3});
    const auto prob = WeightFitProblem::from_orders(std::vector{o, o}, fx::example1());
    for (const auto& fit : {fit_weights(prob), weight_breakpoint_fit_g2(prob)}) {
        CHECK(fit.weights == std::vector<double>{1.0, 0.0});
    }
}

TEST_CASE("Example 1 with an order and its reverse") {
    const auto id = LinearOrder::identity(4);
    const auto prob = WeightFitProblem::from_orders(std::vector{id, id.reversed()}, fx::example1());
    for (const auto& fit : {fit_weights(prob), weight_breakpoint_fit_g2(prob)}) {
        CHECK(fit.weights[0] == doctest::Approx(0.9).epsilon(1e-12));
        CHECK(fit.objective == doctest::Approx(0.4).epsilon(1e-12));
    }
}

TEST_CASE("LP agrees with the grid oracle and the breakpoint fit") {
    Rng rng(22);
    for (int t = 0; t < 15; ++t) {
        const std::size_t g = 2 + t % 2;
        const auto c = fx::random_matrix(4, rng);
        std::vector<LinearOrder> orders;
        for (std::size_t i = 0; i < g; ++i) orders.push_back(fx::random_order(4, rng));
        const auto prob = WeightFitProblem::from_orders(orders, c);
        const auto fit = fit_weights(prob);
        const double grid = oracle::grid_fit(as_double(prob), prob.target);
        CHECK(fit.objective <= grid + 1e-9);
        CHECK(fit.objective >= grid - 0.002);
        double sum = 0.0;
        for (double w : fit.weights) {
            CHECK(w >= 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(oracle::residual(as_double(prob), fit.weights, prob.target) == doctest::Approx(fit.objective));
        if (g == 2) CHECK(weight_breakpoint_fit_g2(prob).objective == doctest::Approx(fit.objective));
    }
}

TEST_CASE("canonical tie rule prefers the largest leading weight") {
    const auto id = LinearOrder::identity(3);
    const PreferenceMatrix c(3, {1.0, 1.0, 1.0});
    // columns id, id, reverse: optimal face is w1 + w2 = 1
    const auto fit = fit_weights(WeightFitProblem::from_orders(std::vector{id, id, id.reversed()}, c));
    CHECK(fit.objective == doctest::Approx(0.0));
    CHECK(fit.weights == std::vector<double>{1.0, 0.0, 0.0});

    const auto fit2 = fit_weights(WeightFitProblem::from_orders(std::vector{id.reversed(), id, id}, c));
    CHECK(fit2.weights == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("shape errors") {
    WeightFitProblem bad;
    CHECK_THROWS(fit_weights(bad));
    bad.columns = {{1, 0}, {1}};
    bad.target = {0.5, 0.5};
    CHECK_THROWS_AS(fit_weights(bad), DimensionError);
}

TEST_CASE("three-column separable fit equals the LP") {
    Rng rng(23);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 3 + rng.below(4);
        const auto c = fx::random_matrix(n, rng, t % 2 == 0);
        std::vector<LinearOrder> orders;
        for (int i = 0; i < 3; ++i) orders.push_back(t % 7 == 0 && i == 2 ? orders[0] : fx::random_order(n, rng));
        const auto prob = WeightFitProblem::from_orders(orders, c);
        const double fast = three_column_objective(prob.columns[0], prob.columns[1], prob.columns[2], prob.target);
        CHECK(fast == doctest::Approx(fit_weights(prob).objective).epsilon(1e-12));
    }
}
