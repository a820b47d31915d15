#ifndef MLOP_REPORT_HPP
#define MLOP_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "mlop/core.hpp"
#include "mlop/exact.hpp"
#include "mlop/heuristic.hpp"

namespace mlop {

enum class Method { exact, heuristic };

Method parse_method(const std::string& s);
std::string to_string(Method m);

struct TraceSummary {
    int starts = 0;
    int total_iterations = 0;
    int best_start = -1;
    std::vector<double> start_objectives;
};

struct SolveReport {
    std::string instance_id;
    Method method = Method::exact;
    std::size_t n = 0;
    std::size_t g = 1;
    double objective = 0.0;
    double max_form = 0.0;
    double fit = 0.0;
    MixtureSolution solution;
    bool proven = false;
    double time_s = 0.0;
    std::optional<TraceSummary> trace;
};

struct SolverSettings {
    ExactConfig exact;
    HeuristicConfig heuristic;
};

SolveReport solve(const PreferenceMatrix& c, Method method, std::size_t g, const SolverSettings& settings,
                  const std::string& instance_id = "");

struct SweepRow {
    std::size_t g = 1;
    double objective = 0.0;
    double fit = 0.0;
    std::optional<double> relative_drop;    // (obj_{g-1} - obj_g) / obj_{g-1}
    std::optional<double> cumulative_drop;  // (obj_1 - obj_g) / obj_1
    double time_s = 0.0;
    MixtureSolution solution;
};

double relative_drop(double previous, double current);
double cumulative_drop(double first, double current);

/// Fills the drop columns of rows already holding g, objective and fit.
void compute_drops(std::vector<SweepRow>& rows);

/// Solves g = 1..g_max. Each heuristic row is compared against the previous
/// row's solution padded with a zero-weight group, and the better one kept,
/// so the objective column is non-increasing for both methods.
std::vector<SweepRow> run_sweep(const PreferenceMatrix& c, std::size_t g_max, Method method,
                                const SolverSettings& settings);

/// Appends a zero-weight group (a copy of the first order).
MixtureSolution pad_with_empty_group(const MixtureSolution& sol);

}  // namespace mlop

#endif
