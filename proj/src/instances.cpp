#include "mlop/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mlop {

std::size_t dispersion_from_percentage(std::size_t n, double p) {
    if (!(p >= 0.0 && p <= 100.0)) throw ValidationError("noise percentage must lie in [0, 100]");
    const double raw = p / 100.0 * static_cast<double>(num_pairs(n));
    // Guard against products like 0.05 * 60 landing a hair above an integer.
    return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

std::size_t GeneratorSpec::dispersion() const {
    if (D) return *D;
    if (p) return dispersion_from_percentage(n, *p);
    return 0;
}

std::size_t GeneratorSpec::separation() const {
    return min_separation ? *min_separation : (num_pairs(n) + 1) / 2;
}

void GeneratorSpec::validate() const {
    if (n < 2) throw ValidationError("n must be at least 2");
    if (g_true < 1) throw ValidationError("g_true must be at least 1");
    if (weights.size() != g_true) throw ValidationError("expected one weight per latent group");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw ValidationError("weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-6) throw ValidationError("weights must sum to 1");
    if (dispersion() > num_pairs(n)) throw ValidationError("D exceeds C(n,2)");
    if (num_rankings < g_true) throw ValidationError("num_rankings must be at least g_true");
    if (separation() > num_pairs(n)) throw ValidationError("min_separation exceeds C(n,2)");
}

namespace {

// ways[i][d]: Lehmer-code suffixes L_i..L_{n-1} (L_i <= n-1-i) summing to d.
std::vector<std::vector<double>> lehmer_suffix_counts(std::size_t n) {
    const std::size_t max_d = num_pairs(n);
    std::vector<std::vector<double>> ways(n + 1, std::vector<double>(max_d + 1, 0.0));
    ways[n][0] = 1.0;
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t cap = n - 1 - i;
        for (std::size_t d = 0; d <= max_d; ++d) {
            double sum = 0.0;
            for (std::size_t e = 0; e <= std::min(cap, d); ++e) sum += ways[i + 1][d - e];
            ways[i][d] = sum;
        }
    }
    return ways;
}

std::size_t pick_weighted(std::span<const double> w, Rng& rng) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    double u = rng.uniform() * total;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (u < w[i]) return i;
        u -= w[i];
    }
    // Round-off: fall back to the last positive entry.
    for (std::size_t i = w.size(); i-- > 0;)
        if (w[i] > 0.0) return i;
    return 0;
}

LinearOrder uniform_order(std::size_t n, Rng& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<int>(perm));
    return LinearOrder(std::move(perm));
}

}  // namespace

std::vector<double> mahonian_counts(std::size_t n) {
    if (n == 0) return {1.0};
    return lehmer_suffix_counts(n).front();
}

std::vector<LinearOrder> sample_centers(std::size_t n, std::size_t g_true, std::size_t min_separation, Rng& rng,
                                        std::uint64_t max_attempts) {
    if (g_true == 0) return {};
    std::vector<LinearOrder> centers;
    centers.push_back(uniform_order(n, rng));
    std::uint64_t rejected = 0;
    while (centers.size() < g_true) {
        auto cand = uniform_order(n, rng);
        const bool ok = std::all_of(centers.begin(), centers.end(),
                                    [&](const LinearOrder& o) { return kendall_distance(o, cand) >= min_separation; });
        if (ok) {
            centers.push_back(std::move(cand));
        } else if (++rejected >= max_attempts) {
            throw InfeasibleError("could not place " + std::to_string(g_true) + " centers at pairwise Kendall distance >= " +
                                  std::to_string(min_separation) + " after " + std::to_string(max_attempts) +
                                  " attempts");
        }
    }
    return centers;
}

LinearOrder sample_within_ball(const LinearOrder& center, std::size_t D, Rng& rng) {
    const std::size_t n = center.n();
    const std::size_t max_d = num_pairs(n);
    if (D > max_d) throw ValidationError("Kendall radius exceeds C(n,2)");
    if (D == 0 || n < 2) return center;

    const auto ways = lehmer_suffix_counts(n);
    const std::size_t d = pick_weighted(std::span<const double>(ways[0].data(), D + 1), rng);

    std::vector<int> available(n);
    std::iota(available.begin(), available.end(), 0);
    std::vector<int> perm;
    perm.reserve(n);
    std::size_t rem = d;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t cap = std::min(n - 1 - i, rem);
        std::vector<double> w(cap + 1);
        for (std::size_t e = 0; e <= cap; ++e) w[e] = ways[i + 1][rem - e];
        const std::size_t e = pick_weighted(w, rng);
        rem -= e;
        perm.push_back(center.perm()[available[e]]);
        available.erase(available.begin() + static_cast<std::ptrdiff_t>(e));
    }
    return LinearOrder(std::move(perm));
}

std::vector<std::size_t> allocate_counts(std::span<const double> weights, std::size_t N) {
    if (weights.empty()) throw ValidationError("no weights to apportion");
    std::vector<std::size_t> counts(weights.size());
    std::vector<double> remainder(weights.size());
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double share = weights[i] * static_cast<double>(N);
        counts[i] = static_cast<std::size_t>(std::floor(share + 1e-9));
        remainder[i] = share - static_cast<double>(counts[i]);
        assigned += counts[i];
    }
    std::vector<std::size_t> idx(weights.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b] + 1e-12; });
    for (std::size_t k = 0; assigned < N; k = (k + 1) % idx.size(), ++assigned) ++counts[idx[k]];
    while (assigned > N) {
        // Only reachable when the weights sum slightly above 1.
        for (std::size_t k = idx.size(); k-- > 0 && assigned > N;) {
            if (counts[idx[k]] > 0) {
                --counts[idx[k]];
                --assigned;
            }
        }
    }
    return counts;
}

std::vector<double> weights_from_ratio(std::span<const double> ratio) {
    const double total = std::accumulate(ratio.begin(), ratio.end(), 0.0);
    if (ratio.empty() || !(total > 0.0)) throw ValidationError("weight ratio must have a positive sum");
    std::vector<long long> thousandths(ratio.size());
    long long sum = 0;
    for (std::size_t i = 0; i < ratio.size(); ++i) {
        if (ratio[i] < 0.0) throw ValidationError("weight ratio entries must be nonnegative");
        thousandths[i] = std::llround(ratio[i] / total * 1000.0);
        sum += thousandths[i];
    }
    thousandths[0] += 1000 - sum;
    std::vector<double> w(ratio.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<double>(thousandths[i]) / 1000.0;
    return w;
}

std::vector<std::vector<std::uint64_t>> count_matrix(std::span<const LinearOrder> rankings) {
    if (rankings.empty()) throw ValidationError("no rankings to aggregate");
    const std::size_t n = rankings.front().n();
    std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(n, 0));
    for (const auto& r : rankings) {
        if (r.n() != n) throw ValidationError("rankings cover different numbers of items");
        const auto perm = r.perm();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y) ++a[perm[x]][perm[y]];
    }
    return a;
}

PreferenceMatrix matrix_from_counts(const std::vector<std::vector<std::uint64_t>>& counts) {
    const std::size_t n = counts.size();
    std::vector<double> upper;
    upper.reserve(num_pairs(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = r + 1; s < n; ++s) {
            const std::uint64_t total = counts[r][s] + counts[s][r];
            if (total == 0) throw ValidationError("pair (" + std::to_string(r + 1) + "," + std::to_string(s + 1) + ") has no comparisons");
            upper.push_back(static_cast<double>(counts[r][s]) / static_cast<double>(total));
        }
    }
    return PreferenceMatrix(n, std::move(upper));
}

PreferenceMatrix aggregate(std::span<const LinearOrder> rankings) { return matrix_from_counts(count_matrix(rankings)); }

Instance generate_instance(const GeneratorSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    Instance inst;
    inst.spec = spec;
    inst.sample.centers = sample_centers(spec.n, spec.g_true, spec.separation(), rng, spec.max_attempts);
    inst.sample.counts = allocate_counts(spec.weights, spec.num_rankings);
    const std::size_t D = spec.dispersion();
    for (std::size_t i = 0; i < spec.g_true; ++i) {
        for (std::size_t k = 0; k < inst.sample.counts[i]; ++k) {
            inst.sample.rankings.push_back(sample_within_ball(inst.sample.centers[i], D, rng));
            inst.sample.labels.push_back(i);
        }
    }
    inst.matrix = aggregate(inst.sample.rankings);
    return inst;
}

namespace {

std::vector<long long> parse_ints(const std::string& line, std::size_t lineno) {
    std::vector<long long> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ValidationError("line " + std::to_string(lineno) + ": '" + tok + "' is not an item index");
        out.push_back(v);
    }
    return out;
}

}  // namespace

std::vector<LinearOrder> parse_rankings(std::istream& in, RankingFormat format) {
    std::vector<LinearOrder> rankings;
    std::string line;
    std::size_t lineno = 0;
    std::size_t n = 0;
    bool header_seen = format != RankingFormat::sushi;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto tokens = parse_ints(line, lineno);
        const std::string where = "line " + std::to_string(lineno) + ": ";

        if (!header_seen) {
            if (tokens.size() < 1 || tokens[0] < 2) throw ValidationError(where + "bad header");
            n = static_cast<std::size_t>(tokens[0]);
            header_seen = true;
            continue;
        }
        long long base = 1;
        if (format == RankingFormat::sushi) {
            if (tokens.size() < 2) throw ValidationError(where + "malformed ranking");
            if (tokens[1] != static_cast<long long>(n))
                throw ValidationError(where + "ranking length field disagrees with header");
            tokens.erase(tokens.begin(), tokens.begin() + 2);
            base = 0;
        }
        if (n == 0) n = tokens.size();
        if (tokens.size() != n)
            throw ValidationError(where + "expected " + std::to_string(n) + " items, found " + std::to_string(tokens.size()));
        std::vector<int> perm;
        std::vector<bool> seen(n, false);
        for (long long t : tokens) {
            const long long item = t - base;
            if (item < 0 || item >= static_cast<long long>(n))
                throw ValidationError(where + "item " + std::to_string(t) + " out of range");
            if (seen[item]) throw ValidationError(where + "item " + std::to_string(t) + " repeated");
            seen[item] = true;
            perm.push_back(static_cast<int>(item));
        }
        rankings.emplace_back(std::move(perm));
    }
    if (rankings.empty()) throw ValidationError("no rankings found");
    return rankings;
}

IngestResult ingest_rankings(std::istream& in, RankingFormat format) {
    const auto rankings = parse_rankings(in, format);
    IngestResult out;
    out.counts = count_matrix(rankings);
    out.matrix = matrix_from_counts(out.counts);
    out.rankings = rankings.size();
    return out;
}

}  // namespace mlop
