#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "mlop/geometry.hpp"
#include "mlop/instances.hpp"
#include "mlop/io.hpp"
#include "mlop/report.hpp"

namespace mlop::cli {

namespace {

using io::json;

constexpr std::uint64_t kDefaultSeed = 20240101;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<double> parse_number_list(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            throw ValidationError("cannot parse number '" + tok + "'");
        }
    }
    return out;
}

// "0.667,0.333" is taken as-is; "2:1" is normalized and rounded to 3 decimals.
std::vector<double> parse_weights(const std::string& text) {
    if (text.find(':') != std::string::npos) return weights_from_ratio(parse_number_list(text, ':'));
    return parse_number_list(text, ',');
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-")
        out << content;
    else
        io::write_text_file(path, content);
}

struct Globals {
    std::uint64_t seed = kDefaultSeed;
    std::string out;
    std::string format = "json";
};

struct SolverFlags {
    std::string method = "exact";
    std::size_t max_n = ExactConfig{}.max_n;
    std::size_t max_g = ExactConfig{}.max_g;
    int starts = HeuristicConfig{}.n_starts;
    int it_max = HeuristicConfig{}.it_max;
    double epsilon = HeuristicConfig{}.epsilon;
    std::uint64_t budget = HeuristicConfig{}.step1_budget;
    std::size_t exact_inner_max_n = HeuristicConfig{}.exact_inner_max_n;

    void add_to(CLI::App& app) {
        app.add_option("--method", method, "exact | heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
        app.add_option("--max-n", max_n, "exact enumeration guard on n");
        app.add_option("--max-g", max_g, "exact enumeration guard on g");
        app.add_option("--starts", starts, "heuristic random starts");
        app.add_option("--it-max", it_max, "heuristic alternations per start");
        app.add_option("--epsilon", epsilon, "heuristic convergence tolerance");
        app.add_option("--budget", budget,
                       "branch-and-bound nodes per ranking update (about 1e6-1e7 nodes/s)");
        app.add_option("--exact-inner-max-n", exact_inner_max_n, "largest n solved exactly in the ranking update");
    }

    SolverSettings settings(std::uint64_t seed) const {
        SolverSettings s;
        s.exact.max_n = max_n;
        s.exact.max_g = max_g;
        s.heuristic.n_starts = starts;
        s.heuristic.it_max = it_max;
        s.heuristic.epsilon = epsilon;
        s.heuristic.step1_budget = budget;
        s.heuristic.exact_inner_max_n = exact_inner_max_n;
        s.heuristic.base_seed = seed;
        return s;
    }
};

int cmd_gen(const Globals& g, std::size_t n, std::size_t g_true, const std::string& weights,
            std::optional<double> p, std::optional<std::size_t> D, std::size_t num_rankings,
            std::optional<std::size_t> min_sep, std::ostream& out) {
    GeneratorSpec spec;
    spec.n = n;
    spec.g_true = g_true;
    spec.weights = weights.empty() ? weights_from_ratio(std::vector<double>(g_true, 1.0)) : parse_weights(weights);
    spec.p = p;
    spec.D = D;
    spec.num_rankings = num_rankings;
    spec.min_separation = min_sep;
    spec.seed = g.seed;
    const auto inst = generate_instance(spec);

    std::string rankings;
    for (const auto& r : inst.sample.rankings) {
        const auto perm = r.perm();
        for (std::size_t k = 0; k < perm.size(); ++k) rankings += (k ? " " : "") + std::to_string(perm[k] + 1);
        rankings += '\n';
    }
    const std::string prefix = g.out.empty() ? "instance" : g.out;
    io::write_text_file(prefix + ".json", io::matrix_to_json(inst.matrix).dump(2) + "\n");
    io::write_text_file(prefix + ".meta.json", io::metadata_to_json(inst).dump(2) + "\n");
    io::write_text_file(prefix + ".rankings.txt", rankings);
    out << "wrote " << prefix << ".json, " << prefix << ".meta.json, " << prefix << ".rankings.txt\n";
    return kOk;
}

int cmd_solve(const Globals& g, const std::string& instance, std::size_t groups, const SolverFlags& flags,
              std::ostream& out) {
    const auto c = io::read_matrix_file(instance);
    const auto rep = solve(c, parse_method(flags.method), groups, flags.settings(g.seed), instance);
    emit(g.out, io::report_to_json(rep).dump(2) + "\n", out);
    return kOk;
}

int cmd_sweep(const Globals& g, const std::string& instance, std::size_t g_max, const SolverFlags& flags,
              std::ostream& out) {
    const auto c = io::read_matrix_file(instance);
    const auto method = parse_method(flags.method);
    const auto rows = run_sweep(c, g_max, method, flags.settings(g.seed));
    const std::string csv = io::sweep_to_csv(rows);
    const std::string js = io::sweep_to_json(rows, method).dump(2) + "\n";
    if (g.out.empty() || g.out == "-") {
        out << (g.format == "csv" ? csv : js);
    } else {
        io::write_text_file(g.out + ".csv", csv);
        io::write_text_file(g.out + ".json", js);
    }
    return kOk;
}

int cmd_verify(const Globals& g, const std::string& instance, const std::string& point_text, std::ostream& out) {
    std::vector<double> point;
    std::size_t n = 0;
    if (!point_text.empty()) {
        point = parse_number_list(point_text, ',');
        n = 2;
        while (num_pairs(n) < point.size()) ++n;
        if (num_pairs(n) != point.size())
            throw DimensionError(std::to_string(point.size()) + " coordinates is not C(n,2) for any n");
    } else if (!instance.empty()) {
        const auto c = io::read_matrix_file(instance);
        n = c.n();
        point.assign(c.upper().begin(), c.upper().end());
    } else {
        throw ValidationError("verify needs an instance file or --point");
    }

    json report{{"n", n}, {"point", point}};
    json violations = json::array();
    double worst = 0.0;
    bool any_violation = false;
    for (const auto& r : cycle_residuals(point, n)) {
        if (!r.violated()) continue;
        violations.push_back(json{{"triple", {r.triple[0] + 1, r.triple[1] + 1, r.triple[2] + 1}}, {"residual", r.residual}});
        const double excess = r.residual < 0.0 ? -r.residual : r.residual - 1.0;
        if (!any_violation || excess > (worst < 0.0 ? -worst : worst - 1.0)) worst = r.residual;
        any_violation = true;
    }
    report["residual_violations"] = violations;

    std::optional<bool> inside;
    std::optional<double> distance;
    std::optional<std::size_t> g_star;
    if (n <= kMaxMembershipN) {
        const auto proj = l1_projection_full(point, n);
        distance = proj.distance;
        inside = proj.distance <= kTolerance;
        report["inside"] = *inside;
        report["projection_distance"] = proj.distance;
        report["projection_point"] = proj.point;
    }
    if (n <= kMaxSaturationN) {
        g_star = caratheodory_saturation(point, n);
        report["g_star"] = *g_star;
    }

    if (g.format == "json") {
        emit(g.out, report.dump(2) + "\n", out);
        return kOk;
    }
    std::string text;
    if (inside && *inside) {
        text += "inside, distance 0";
    } else {
        text += inside || any_violation ? "outside P" : "membership not checked (n > 7)";
        if (any_violation) text += ", residual " + fmt(worst);
        if (distance) text += ", projection distance " + fmt(*distance);
    }
    if (g_star) text += ", g*=" + std::to_string(*g_star);
    text += "\n";
    for (const auto& v : violations) {
        text += "  violated triple (" + std::to_string(v["triple"][0].get<int>()) + "," +
                std::to_string(v["triple"][1].get<int>()) + "," + std::to_string(v["triple"][2].get<int>()) +
                "): residual " + fmt(v["residual"].get<double>()) + "\n";
    }
    emit(g.out, text, out);
    return kOk;
}

int cmd_ingest(const Globals& g, const std::string& path, const std::string& input_format, std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    const auto res = ingest_rankings(in, input_format == "sushi" ? RankingFormat::sushi : RankingFormat::plain);
    if (g.out.empty() || g.out == "-") {
        json j = io::matrix_to_json(res.matrix);
        j["counts"] = res.counts;
        j["rankings"] = res.rankings;
        out << j.dump(2) << "\n";
    } else {
        io::write_text_file(g.out + ".json", io::matrix_to_json(res.matrix).dump(2) + "\n");
        io::write_text_file(g.out + ".counts.json", io::counts_to_json(res.counts).dump(2) + "\n");
        out << "ingested " << res.rankings << " rankings over " << res.matrix.n() << " items\n";
    }
    return kOk;
}

int cmd_validate(const std::string& report_path, const std::string& instance, std::ostream& out, std::ostream& err) {
    const auto c = io::read_matrix_file(instance);
    json report;
    try {
        report = json::parse(io::read_text_file(report_path));
    } catch (const json::exception& e) {
        throw ValidationError(report_path + ": " + e.what());
    }
    const auto problems = io::validate_report(report, c);
    if (problems.empty()) {
        out << "ok\n";
        return kOk;
    }
    for (const auto& p : problems) err << "invalid: " << p << "\n";
    return kValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mixture linear ordering toolkit", "mlop"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals globals;
    app.add_option("--seed", globals.seed, "random seed (never taken from the clock)");
    app.add_option("--out", globals.out, "output file or prefix");
    app.add_option("--format", globals.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
    std::size_t gen_n = 0, gen_g = 1, gen_num = 1000;
    std::string gen_weights;
    std::optional<double> gen_p;
    std::optional<std::size_t> gen_D, gen_sep;
    gen->add_option("--n", gen_n, "items")->required();
    gen->add_option("--g-true", gen_g, "latent groups");
    gen->add_option("--weights", gen_weights, "comma list (0.667,0.333) or ratio (2:1); default equal");
    gen->add_option("--p", gen_p, "noise as a percentage of C(n,2)");
    gen->add_option("--D", gen_D, "Kendall radius; overrides --p");
    gen->add_option("--num-rankings", gen_num, "rankings to sample");
    gen->add_option("--min-separation", gen_sep, "minimum Kendall distance between centers");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve one instance for a fixed g");
    std::string solve_instance;
    std::size_t solve_g = 1;
    SolverFlags solve_flags;
    solve_cmd->add_option("instance", solve_instance, "instance JSON")->required();
    solve_cmd->add_option("--g", solve_g, "groups");
    solve_flags.add_to(*solve_cmd);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "solve g = 1..g-max and report drops");
    std::string sweep_instance;
    std::size_t sweep_gmax = 4;
    SolverFlags sweep_flags;
    sweep->add_option("instance", sweep_instance, "instance JSON")->required();
    sweep->add_option("--g-max", sweep_gmax, "largest g");
    sweep_flags.add_to(*sweep);

    // verify
    auto* verify = app.add_subcommand("verify", "polytope checks for an instance or point");
    std::string verify_instance, verify_point;
    verify->add_option("instance", verify_instance, "instance JSON");
    verify->add_option("--point", verify_point, "comma-separated upper triangle");
    verify->add_flag("--geometry", "accepted for compatibility; geometry is always checked");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "aggregate a rankings file into an instance");
    std::string ingest_path, ingest_format = "plain";
    ingest->add_option("rankings", ingest_path, "rankings text file")->required();
    ingest->add_option("--input-format", ingest_format, "plain | sushi")->check(CLI::IsMember({"plain", "sushi"}));

    // validate
    auto* validate = app.add_subcommand("validate", "re-check a solve report against its instance");
    std::string validate_report_path, validate_instance;
    validate->add_option("report", validate_report_path, "report JSON")->required();
    validate->add_option("instance", validate_instance, "instance JSON")->required();

    std::vector<std::string> storage{"mlop"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    try {
        if (*gen) return cmd_gen(globals, gen_n, gen_g, gen_weights, gen_p, gen_D, gen_num, gen_sep, out);
        if (*solve_cmd) return cmd_solve(globals, solve_instance, solve_g, solve_flags, out);
        if (*sweep) return cmd_sweep(globals, sweep_instance, sweep_gmax, sweep_flags, out);
        if (*verify) {
            Globals g = globals;
            if (!app.get_option("--format")->count()) g.format = "text";
            return cmd_verify(g, verify_instance, verify_point, out);
        }
        if (*ingest) return cmd_ingest(globals, ingest_path, ingest_format, out);
        if (*validate) return cmd_validate(validate_report_path, validate_instance, out, err);
    } catch (const SizeGuardError& e) {
        err << "error: " << e.what() << "\n";
        return kSizeGuard;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}

}  // namespace mlop::cli
