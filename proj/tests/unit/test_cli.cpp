#include <doctest.h>

#include <cli.hpp>
#include <mlop/io.hpp>

#include <filesystem>
#include <sstream>
#include <unistd.h>

using namespace mlop;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("mlop_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string write(const TempDir& dir, const std::string& name, const std::string& text) {
    const auto p = dir / name;
    io::write_text_file(p, text);
    return p;
}

}  // namespace

TEST_CASE("gen records weights and is reproducible") {
    TempDir dir;
    auto r = run({"--seed", "5", "--out", dir / "a", "gen", "--n", "12", "--g-true", "2", "--p", "1", "--weights",
                  "2:1", "--num-rankings", "200"});
    REQUIRE(r.code == 0);
    const auto meta = io::json::parse(io::read_text_file(dir / "a.meta.json"));
    CHECK(meta["weights"] == io::json::array({0.667, 0.333}));
    CHECK(meta["D"] == 1);

    run({"--seed", "5", "--out", dir / "b", "gen", "--n", "12", "--g-true", "2", "--p", "1", "--weights", "2:1",
         "--num-rankings", "200"});
    CHECK(io::read_text_file(dir / "a.json") == io::read_text_file(dir / "b.json"));
    CHECK(io::read_text_file(dir / "a.meta.json") == io::read_text_file(dir / "b.meta.json"));
    CHECK(io::read_text_file(dir / "a.rankings.txt") == io::read_text_file(dir / "b.rankings.txt"));

    r = run({"--out", dir / "one", "gen", "--n", "5", "--num-rankings", "1", "--g-true", "1", "--D", "0"});
    REQUIRE(r.code == 0);
    for (double v : io::json::parse(io::read_text_file(dir / "one.json"))["c_upper"])
        CHECK((v == 0.0 || v == 1.0));

    r = run({"--out", dir / "x", "gen", "--n", "3", "--g-true", "3", "--min-separation", "3"});
    CHECK(r.code == cli::kInfeasible);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("solve, validate and the size guard") {
    TempDir dir;
    const auto inst = write(dir, "ex1.json", R"({"n": 4, "c_upper": [0.9, 0.9, 0.9, 0.5, 0.9, 0.9]})");
    auto r = run({"solve", inst, "--g", "3", "--method", "exact"});
    REQUIRE(r.code == 0);
    auto j = io::json::parse(r.out);
    CHECK(j["objective"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(j["fit"].get<double>() == doctest::Approx(1.0));

    r = run({"--seed", "7", "solve", inst, "--g", "3", "--method", "heuristic"});
    REQUIRE(r.code == 0);
    j = io::json::parse(r.out);
    CHECK(j["objective"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));

    r = run({"--out", dir / "rep.json", "solve", inst, "--g", "1"});
    REQUIRE(r.code == 0);
    j = io::json::parse(io::read_text_file(dir / "rep.json"));
    CHECK(j["max_form_value"].get<double>() == doctest::Approx(5.0));
    r = run({"validate", dir / "rep.json", inst});
    CHECK(r.code == 0);
    CHECK(r.out == "ok\n");

    std::string upper = "0.5";
    for (int i = 1; i < 21; ++i) upper += ",0.5";
    const auto big = write(dir, "big.json", R"({"n": 7, "c_upper": [)" + upper + "]}");
    r = run({"solve", big, "--g", "2", "--method", "exact"});
    CHECK(r.code == cli::kSizeGuard);
    CHECK(r.err.find("heuristic") != std::string::npos);

    r = run({"solve", dir / "missing.json"});
    CHECK(r.code == cli::kValidation);
    r = run({"solve", inst, "--method", "simplex"});
    CHECK(r.code == cli::kValidation);
}

TEST_CASE("sweep output formats") {
    TempDir dir;
    const auto inst = write(dir, "ex5.json", R"({"n": 3, "c_upper": [0.7, 0.8, 0.4]})");
    auto r = run({"--format", "csv", "sweep", inst, "--g-max", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("g,objective,fit,relative_drop,cumulative_drop,time_s\n1,0.9,0.7,,,", 0) == 0);
    r = run({"sweep", inst, "--g-max", "2"});
    const auto j = io::json::parse(r.out);
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][0]["relative_drop"].is_null());
    CHECK(j["rows"][1]["objective"].get<double>() == doctest::Approx(0.2));
}

TEST_CASE("verify") {
    auto r = run({"verify", "--point", "0.3,0.9,0.2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("outside P, residual -0.4, projection distance 0.4, g*=3", 0) == 0);
    r = run({"verify", "--point", "1,0,0"});
    CHECK(r.out.rfind("inside, distance 0, g*=1", 0) == 0);
    r = run({"verify", "--point", "0.7,0.8,0.4"});
    CHECK(r.out.rfind("inside", 0) == 0);
    CHECK(r.out.find("g*=4") != std::string::npos);
    r = run({"--format", "json", "verify", "--point", "0.3,0.9,0.2"});
    CHECK(io::json::parse(r.out)["g_star"] == 3);
    r = run({"verify", "--point", "0.3,0.9"});
    CHECK(r.code == cli::kValidation);
}

TEST_CASE("ingest") {
    TempDir dir;
    const auto file = write(dir, "r.txt", "1 2 3\n3 2 1\n");
    auto r = run({"--out", dir / "agg", "ingest", file});
    REQUIRE(r.code == 0);
    const auto j = io::json::parse(io::read_text_file(dir / "agg.json"));
    CHECK(j["c_upper"] == io::json::array({0.5, 0.5, 0.5}));
    const auto counts = io::json::parse(io::read_text_file(dir / "agg.counts.json"));
    CHECK(counts["a"][0][1] == 1);

    const auto bad = write(dir, "bad.txt", "1 2 3\n1 2 4\n");
    r = run({"ingest", bad});
    CHECK(r.code == cli::kValidation);
    CHECK(r.err.find("line 2") != std::string::npos);
}
