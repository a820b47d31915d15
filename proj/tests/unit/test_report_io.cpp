#include <doctest.h>

#include <mlop/io.hpp>
#include <mlop/report.hpp>

#include "fixtures.hpp"

using namespace mlop;

TEST_CASE("drop arithmetic") {
    CHECK(relative_drop(15.390, 4.253) * 100 == doctest::Approx(72.365).epsilon(1e-5));
    CHECK(cumulative_drop(15.390, 1.210) * 100 == doctest::Approx(92.138).epsilon(1e-5));
    CHECK(relative_drop(0.0, 0.0) == 0.0);

    std::vector<SweepRow> rows(3);
    for (auto& r : rows) r.objective = 2.5;
    compute_drops(rows);
    CHECK_FALSE(rows[0].relative_drop.has_value());
    CHECK(*rows[1].relative_drop == 0.0);
    CHECK(*rows[2].cumulative_drop == 0.0);
}

TEST_CASE("solve report for g=1 carries the LOP optimum") {
    const auto c = fx::example1();
    const auto rep = solve(c, Method::exact, 1, {});
    CHECK(rep.objective == doctest::Approx(1.0));
    CHECK(rep.max_form == doctest::Approx(5.0));
    CHECK(rep.fit == doctest::Approx(1.0 - 1.0 / 6.0));
    CHECK(rep.proven);

    const auto j = io::report_to_json(rep);
    CHECK(j["orders"][0] == io::json::array({1, 2, 3, 4}));
    CHECK(io::validate_report(j, c).empty());

    auto tampered = j;
    tampered["objective"] = 0.5;
    CHECK_FALSE(io::validate_report(tampered, c).empty());
}

TEST_CASE("exact sweep is non-increasing") {
    Rng rng(61);
    const auto c = fx::random_matrix(4, rng);
    const auto rows = run_sweep(c, 3, Method::exact, {});
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].objective <= rows[i - 1].objective + 1e-12);
        CHECK(rows[i].relative_drop.has_value());
    }
    const auto csv = io::sweep_to_csv(rows);
    CHECK(csv.rfind("g,objective,fit,relative_drop,cumulative_drop,time_s\n1,", 0) == 0);
}

TEST_CASE("heuristic sweep never gets worse with more groups") {
    Rng rng(62);
    const auto c = fx::random_matrix(6, rng);
    SolverSettings s;
    s.heuristic.n_starts = 3;
    const auto rows = run_sweep(c, 4, Method::heuristic, s);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].objective <= rows[i - 1].objective + 1e-12);
}

TEST_CASE("matrix JSON round trip") {
    const auto c = fx::example1();
    CHECK(io::matrix_from_json(io::matrix_to_json(c)) == c);
    const auto full = io::json::parse(R"({"c": [[null, 0.7, 0.8], [0.3, null, 0.4], [0.2, 0.6, null]]})");
    CHECK(io::matrix_from_json(full) == fx::example5());
    CHECK_THROWS_AS(io::matrix_from_json(io::json::parse(R"({"n": 3})")), ValidationError);
    CHECK_THROWS_AS(io::matrix_from_json(io::json::parse(R"({"n": 3, "c_upper": [0.1]})")), DimensionError);
}

TEST_CASE("pad_with_empty_group") {
    const MixtureSolution s{{LinearOrder::identity(3)}, {1.0}};
    const auto p = pad_with_empty_group(s);
    CHECK(p.groups() == 2);
    CHECK(p.weights.back() == 0.0);
    CHECK(l1_objective(p, fx::example5()) == doctest::Approx(l1_objective(s, fx::example5())));
}
