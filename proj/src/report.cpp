#include "mlop/report.hpp"

#include <chrono>

namespace mlop {

Method parse_method(const std::string& s) {
    if (s == "exact") return Method::exact;
    if (s == "heuristic") return Method::heuristic;
    throw ValidationError("unknown method '" + s + "' (expected exact or heuristic)");
}

std::string to_string(Method m) { return m == Method::exact ? "exact" : "heuristic"; }

SolveReport solve(const PreferenceMatrix& c, Method method, std::size_t g, const SolverSettings& settings,
                  const std::string& instance_id) {
    SolveReport rep;
    rep.instance_id = instance_id;
    rep.method = method;
    rep.n = c.n();
    rep.g = g;
    const auto start = std::chrono::steady_clock::now();
    if (method == Method::exact) {
        ExactConfig cfg = settings.exact;
        cfg.g = g;
        auto res = solve_exact(c, cfg);
        rep.solution = std::move(res.solution);
        rep.proven = res.proven;
    } else {
        auto res = solve_heuristic(c, g, settings.heuristic);
        rep.solution = std::move(res.solution);
        TraceSummary t;
        t.starts = static_cast<int>(res.trace.starts.size());
        t.total_iterations = res.trace.total_iterations;
        t.best_start = res.trace.best_start;
        for (const auto& s : res.trace.starts) t.start_objectives.push_back(s.final_objective);
        rep.trace = std::move(t);
    }
    rep.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.objective = l1_objective(rep.solution, c);
    rep.max_form = static_cast<double>(c.pairs()) - rep.objective;
    rep.fit = fit_from_objective(rep.objective, c.n());
    return rep;
}

double relative_drop(double previous, double current) {
    return previous > 0.0 ? (previous - current) / previous : 0.0;
}

double cumulative_drop(double first, double current) { return first > 0.0 ? (first - current) / first : 0.0; }

void compute_drops(std::vector<SweepRow>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0) {
            rows[i].relative_drop.reset();
            rows[i].cumulative_drop.reset();
            continue;
        }
        rows[i].relative_drop = relative_drop(rows[i - 1].objective, rows[i].objective);
        rows[i].cumulative_drop = cumulative_drop(rows[0].objective, rows[i].objective);
    }
}

MixtureSolution pad_with_empty_group(const MixtureSolution& sol) {
    MixtureSolution out = sol;
    out.orders.push_back(sol.orders.front());
    out.weights.push_back(0.0);
    return out;
}

std::vector<SweepRow> run_sweep(const PreferenceMatrix& c, std::size_t g_max, Method method,
                                const SolverSettings& settings) {
    if (g_max < 1) throw ValidationError("g_max must be at least 1");
    std::vector<SweepRow> rows;
    for (std::size_t g = 1; g <= g_max; ++g) {
        const auto rep = solve(c, method, g, settings);
        SweepRow row;
        row.g = g;
        row.solution = rep.solution;
        row.objective = rep.objective;
        row.time_s = rep.time_s;
        if (!rows.empty()) {
            auto padded = canonicalize(pad_with_empty_group(rows.back().solution));
            const double padded_obj = l1_objective(padded, c);
            if (padded_obj < row.objective) {
                row.solution = std::move(padded);
                row.objective = padded_obj;
            }
        }
        row.fit = fit_from_objective(row.objective, c.n());
        rows.push_back(std::move(row));
    }
    compute_drops(rows);
    return rows;
}

}  // namespace mlop
