#include <doctest.h>

#include <mlop/instances.hpp>

#include <map>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace mlop;

TEST_CASE("dispersion_from_percentage") {
    CHECK(dispersion_from_percentage(12, 1) == 1);
    CHECK(dispersion_from_percentage(12, 5) == 4);
    CHECK(dispersion_from_percentage(12, 10) == 7);
    CHECK(dispersion_from_percentage(12, 0) == 0);
    CHECK_THROWS_AS(dispersion_from_percentage(12, 101), ValidationError);
}

TEST_CASE("mahonian_counts against enumeration") {
    for (std::size_t n = 2; n <= 7; ++n) {
        const auto dp = mahonian_counts(n);
        const auto en = oracle::mahonian_by_enumeration(n);
        REQUIRE(dp.size() == en.size());
        for (std::size_t d = 0; d < dp.size(); ++d) CHECK(dp[d] == static_cast<double>(en[d]));
    }
    const auto m5 = mahonian_counts(5);
    CHECK(m5[0] == 1);
    CHECK(m5[1] == 4);
    CHECK(m5[2] == 9);
}

TEST_CASE("sample_centers") {
    Rng rng(51);
    const auto one = sample_centers(6, 1, 15, rng);
    CHECK(one.size() == 1);

    const auto two = sample_centers(4, 2, 6, rng);
    CHECK(two[1] == two[0].reversed());

    const auto three = sample_centers(8, 3, 14, rng);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            CHECK(oracle::inversions(fx::to_vec(three[i]), fx::to_vec(three[j])) >= 14);

    // three orders pairwise at distance 3 on three items do not exist
    CHECK_THROWS_AS(sample_centers(3, 3, 3, rng, 1000), InfeasibleError);
}

TEST_CASE("sample_within_ball") {
    Rng rng(52);
    const auto center = fx::random_order(6, rng);
    CHECK(sample_within_ball(center, 0, rng) == center);
    for (int i = 0; i < 2000; ++i) CHECK(kendall_distance(sample_within_ball(center, 4, rng), center) <= 4);
    CHECK_THROWS_AS(sample_within_ball(center, 16, rng), ValidationError);
}

TEST_CASE("uniform sampling at D = C(n,2)") {
    Rng rng(53);
    const auto center = LinearOrder::identity(4);
    std::map<std::vector<int>, int> freq;
    const int samples = 100'000;
    for (int i = 0; i < samples; ++i) ++freq[fx::to_vec(sample_within_ball(center, 6, rng))];
    CHECK(freq.size() == 24);
    double chi2 = 0.0;
    const double expect = samples / 24.0;
    for (const auto& [k, v] : freq) chi2 += (v - expect) * (v - expect) / expect;
    CHECK(chi2 < 41.638);  // chi-square 0.99 quantile, 23 dof
}

TEST_CASE("allocate_counts and weights_from_ratio") {
    CHECK(allocate_counts(std::vector{0.667, 0.333}, 1000) == std::vector<std::size_t>{667, 333});
    CHECK(allocate_counts(std::vector{0.5, 0.5}, 1001) == std::vector<std::size_t>{501, 500});
    CHECK(allocate_counts(std::vector{0.334, 0.333, 0.333}, 1000) == std::vector<std::size_t>{334, 333, 333});
    CHECK(weights_from_ratio(std::vector{2.0, 1.0}) == std::vector{0.667, 0.333});
    CHECK(weights_from_ratio(std::vector{1.0, 1.0, 1.0}) == std::vector{0.334, 0.333, 0.333});
    CHECK(weights_from_ratio(std::vector{8.0, 4.0, 2.0, 1.0}) == std::vector{0.533, 0.267, 0.133, 0.067});
}

TEST_CASE("aggregate") {
    const LinearOrder a({0, 1, 2});
    const auto single = aggregate(std::vector{a});
    CHECK(std::vector<double>(single.upper().begin(), single.upper().end()) == std::vector<double>{1, 1, 1});

    std::vector<LinearOrder> rk(900, LinearOrder::identity(4));
    rk.insert(rk.end(), 100, LinearOrder::identity(4).reversed());
    const auto m = aggregate(rk);
    std::vector<std::vector<int>> plain;
    for (const auto& r : rk) plain.push_back(fx::to_vec(r));
    const auto expect = oracle::pairwise_proportions(4, plain);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(m.upper()[k] == doctest::Approx(expect[k]).epsilon(1e-15));
        CHECK(m.upper()[k] == doctest::Approx(0.9));
    }

    std::vector<LinearOrder> half(50, LinearOrder::identity(5));
    half.insert(half.end(), 50, LinearOrder::identity(5).reversed());
    const auto balanced = aggregate(half);
    for (double v : balanced.upper()) CHECK(v == 0.5);
}

TEST_CASE("generate_instance") {
    GeneratorSpec spec;
    spec.n = 6;
    spec.g_true = 2;
    spec.weights = {0.667, 0.333};
    spec.D = 2;
    spec.num_rankings = 300;
    spec.seed = 9;
    const auto a = generate_instance(spec);
    const auto b = generate_instance(spec);
    CHECK(a.matrix == b.matrix);
    CHECK(a.sample.rankings == b.sample.rankings);
    CHECK(a.sample.counts == std::vector<std::size_t>{200, 100});
    for (std::size_t i = 0; i < a.sample.rankings.size(); ++i)
        CHECK(kendall_distance(a.sample.rankings[i], a.sample.centers[a.sample.labels[i]]) <= 2);
    CHECK(kendall_distance(a.sample.centers[0], a.sample.centers[1]) >= spec.separation());

    spec.seed = 10;
    CHECK_FALSE(generate_instance(spec).matrix == a.matrix);

    spec.weights = {0.5, 0.4};
    CHECK_THROWS_AS(generate_instance(spec), ValidationError);
}

TEST_CASE("ingest_rankings plain") {
    std::istringstream one("1 2 3\n");
    const auto r1 = ingest_rankings(one);
    CHECK(std::vector<double>(r1.matrix.upper().begin(), r1.matrix.upper().end()) == std::vector<double>{1, 1, 1});

    std::istringstream two("# comment\n1 2 3\n\n3 2 1\n");
    const auto r2 = ingest_rankings(two);
    CHECK(r2.rankings == 2);
    for (double v : r2.matrix.upper()) CHECK(v == 0.5);

    std::istringstream bad("1 2 3\n1 1 3\n");
    try {
        ingest_rankings(bad);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::istringstream short_line("1 2 3\n1 2\n");
    CHECK_THROWS_AS(ingest_rankings(short_line), ValidationError);
}

TEST_CASE("ingest_rankings sushi layout") {
    std::istringstream in("3 1\n0 3 2 0 1\n0 3 0 1 2\n");
    const auto r = ingest_rankings(in, RankingFormat::sushi);
    CHECK(r.rankings == 2);
    // item 0 vs 1: first ranking 0 before 1, second 0 before 1
    CHECK(r.matrix(0, 1) == 1.0);
    CHECK(r.matrix(0, 2) == 0.5);
    CHECK(r.matrix(1, 2) == 0.5);
}
