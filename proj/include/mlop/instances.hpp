#ifndef MLOP_INSTANCES_HPP
#define MLOP_INSTANCES_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "mlop/core.hpp"
#include "mlop/rng.hpp"

namespace mlop {

struct GeneratorSpec {
    std::size_t n = 0;
    std::size_t g_true = 1;
    std::vector<double> weights;
    std::optional<double> p;             // noise as a percentage of C(n,2)
    std::optional<std::size_t> D;        // explicit Kendall radius; wins over p
    std::size_t num_rankings = 1000;
    std::optional<std::size_t> min_separation;  // default ceil(C(n,2)/2)
    std::uint64_t seed = 1;
    std::uint64_t max_attempts = 100'000;

    std::size_t dispersion() const;
    std::size_t separation() const;
    void validate() const;
};

struct RankingSample {
    std::vector<LinearOrder> rankings;
    std::vector<std::size_t> labels;  // group of each ranking
    std::vector<LinearOrder> centers;
    std::vector<std::size_t> counts;
};

struct Instance {
    GeneratorSpec spec;
    RankingSample sample;
    PreferenceMatrix matrix;
};

/// ceil((p / 100) * C(n,2)); throws ValidationError unless 0 <= p <= 100.
std::size_t dispersion_from_percentage(std::size_t n, double p);

/// mahonian(n)[d]: number of permutations of n items with d inversions.
/// Stored as doubles (n! overflows 64-bit integers from n = 21).
std::vector<double> mahonian_counts(std::size_t n);

/// Uniform rejection sampling of g_true orders with pairwise Kendall
/// distance >= min_separation. Throws InfeasibleError after max_attempts
/// rejected draws.
std::vector<LinearOrder> sample_centers(std::size_t n, std::size_t g_true, std::size_t min_separation, Rng& rng,
                                        std::uint64_t max_attempts = 100'000);

/// Uniform draw from the Kendall ball of radius D around `center`: the
/// distance is drawn with Mahonian weights, then a uniform Lehmer code with
/// that many inversions is applied to the center.
LinearOrder sample_within_ball(const LinearOrder& center, std::size_t D, Rng& rng);

/// Largest-remainder apportionment of N * w_i; remainder ties go to the
/// lower group index.
std::vector<std::size_t> allocate_counts(std::span<const double> weights, std::size_t N);

/// Normalizes a ratio like {2, 1} and rounds to 3 decimals, putting the
/// rounding slack on the first group so the result sums to 1.
std::vector<double> weights_from_ratio(std::span<const double> ratio);

/// Pairwise count matrix: counts[r][s] = rankings placing r before s.
std::vector<std::vector<std::uint64_t>> count_matrix(std::span<const LinearOrder> rankings);

PreferenceMatrix matrix_from_counts(const std::vector<std::vector<std::uint64_t>>& counts);

/// c_rs = a_rs / (a_rs + a_sr); throws ValidationError on an empty list or
/// rankings of differing length.
PreferenceMatrix aggregate(std::span<const LinearOrder> rankings);

Instance generate_instance(const GeneratorSpec& spec);

struct IngestResult {
    PreferenceMatrix matrix;
    std::vector<std::vector<std::uint64_t>> counts;
    std::size_t rankings = 0;
};

enum class RankingFormat {
    plain,  // 1-based item indices, most preferred first
    sushi,  // "<n> 1" header, then "0 <n> items..." with 0-based items
};

/// Reads complete rankings, one per line. Blank lines and lines starting
/// with '#' are skipped. Errors carry the 1-based line number.
IngestResult ingest_rankings(std::istream& in, RankingFormat format = RankingFormat::plain);
std::vector<LinearOrder> parse_rankings(std::istream& in, RankingFormat format = RankingFormat::plain);

}  // namespace mlop

#endif
