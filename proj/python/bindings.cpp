#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <mlop/exact.hpp>
#include <mlop/geometry.hpp>
#include <mlop/heuristic.hpp>
#include <mlop/instances.hpp>
#include <mlop/io.hpp>
#include <mlop/lop.hpp>
#include <mlop/report.hpp>
#include <mlop/simplex_fit.hpp>

#include <sstream>

namespace py = pybind11;
using namespace mlop;

namespace {

std::vector<int> perm_of(const LinearOrder& o) { return {o.perm().begin(), o.perm().end()}; }

std::vector<double> upper_of(const PreferenceMatrix& c) { return {c.upper().begin(), c.upper().end()}; }

py::dict solution_dict(const MixtureSolution& s) {
    py::list orders;
    for (const auto& o : s.orders) orders.append(perm_of(o));
    py::dict d;
    d["orders"] = orders;
    d["weights"] = s.weights;
    return d;
}

MixtureSolution solution_from(const std::vector<std::vector<int>>& orders, const std::vector<double>& weights) {
    MixtureSolution s;
    for (const auto& p : orders) s.orders.emplace_back(p);
    s.weights = weights;
    s.validate();
    return s;
}

HeuristicConfig heuristic_config(int starts, int it_max, double epsilon, std::uint64_t seed) {
    HeuristicConfig cfg;
    cfg.n_starts = starts;
    cfg.it_max = it_max;
    cfg.epsilon = epsilon;
    cfg.base_seed = seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_mlop, m) {
    m.doc() = "Mixture linear ordering: exact and heuristic solvers, instance generation, polytope checks.";

    py::register_exception<Error>(m, "MlopError", PyExc_ValueError);
    py::register_exception<SizeGuardError>(m, "SizeGuardError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

    py::class_<PreferenceMatrix>(m, "PreferenceMatrix")
        .def(py::init<std::size_t, std::vector<double>>(), py::arg("n"), py::arg("upper"))
        .def_static("from_full", &PreferenceMatrix::from_full, py::arg("rows"))
        .def_property_readonly("n", &PreferenceMatrix::n)
        .def_property_readonly("upper", &upper_of)
        .def("__call__", &PreferenceMatrix::operator(), py::arg("r"), py::arg("s"))
        .def("__eq__", [](const PreferenceMatrix& a, const PreferenceMatrix& b) { return a == b; })
        .def("__repr__", [](const PreferenceMatrix& c) { return "PreferenceMatrix(n=" + std::to_string(c.n()) + ")"; });

    m.def("lop_value", [](const std::vector<int>& perm, const PreferenceMatrix& c) { return lop_value(LinearOrder(perm), c); },
          py::arg("order"), py::arg("c"));
    m.def("l1_objective",
          [](const std::vector<std::vector<int>>& orders, const std::vector<double>& weights, const PreferenceMatrix& c) {
              return l1_objective(solution_from(orders, weights), c);
          },
          py::arg("orders"), py::arg("weights"), py::arg("c"));
    m.def("fit_from_objective", &fit_from_objective, py::arg("objective"), py::arg("n"));
    m.def("relative_drop", &relative_drop, py::arg("previous"), py::arg("current"));
    m.def("cumulative_drop", &cumulative_drop, py::arg("first"), py::arg("current"));
    m.def("kendall_distance",
          [](const std::vector<int>& a, const std::vector<int>& b) { return kendall_distance(LinearOrder(a), LinearOrder(b)); },
          py::arg("a"), py::arg("b"));
    m.def("canonicalize",
          [](const std::vector<std::vector<int>>& orders, const std::vector<double>& weights) {
              return solution_dict(canonicalize(solution_from(orders, weights)));
          },
          py::arg("orders"), py::arg("weights"));

    m.def("lop_exact",
          [](const std::vector<std::vector<double>>& b, std::uint64_t node_budget) {
              BenefitMatrix bm(b.size());
              for (std::size_t r = 0; r < b.size(); ++r) {
                  if (b[r].size() != b.size()) throw DimensionError("benefit matrix must be square");
                  for (std::size_t s = 0; s < b.size(); ++s) bm(r, s) = b[r][s];
              }
              const auto res = lop_exact(bm, node_budget);
              py::dict d;
              d["order"] = perm_of(res.order);
              d["value"] = res.value;
              d["proven"] = res.proven;
              d["nodes"] = res.nodes;
              return d;
          },
          py::arg("benefits"), py::arg("node_budget") = kUnlimitedNodes);

    m.def("fit_weights",
          [](const std::vector<std::vector<std::uint8_t>>& columns, const std::vector<double>& target) {
              const auto fit = fit_weights(WeightFitProblem{columns, target});
              return py::make_tuple(fit.weights, fit.objective);
          },
          py::arg("columns"), py::arg("target"));

    m.def("solve_exact",
          [](const PreferenceMatrix& c, std::size_t g, std::size_t max_n, std::size_t max_g) {
              ExactConfig cfg;
              cfg.g = g;
              cfg.max_n = max_n;
              cfg.max_g = max_g;
              py::gil_scoped_release release;
              const auto res = solve_exact(c, cfg);
              py::gil_scoped_acquire acquire;
              auto d = solution_dict(res.solution);
              d["objective"] = res.objective;
              d["proven"] = res.proven;
              return d;
          },
          py::arg("c"), py::arg("g"), py::arg("max_n") = ExactConfig{}.max_n, py::arg("max_g") = ExactConfig{}.max_g);

    m.def("opt_curve",
          [](const PreferenceMatrix& c, std::size_t g_max, std::size_t max_n, std::size_t max_g) {
              ExactConfig cfg;
              cfg.max_n = max_n;
              cfg.max_g = max_g;
              std::vector<double> out;
              for (const auto& [g, v] : opt_curve(c, g_max, cfg)) out.push_back(v);
              return out;
          },
          py::arg("c"), py::arg("g_max"), py::arg("max_n") = ExactConfig{}.max_n,
          py::arg("max_g") = ExactConfig{}.max_g);

    m.def("solve_heuristic",
          [](const PreferenceMatrix& c, std::size_t g, int starts, int it_max, double epsilon, std::uint64_t seed) {
              const auto cfg = heuristic_config(starts, it_max, epsilon, seed);
              HeuristicResult res;
              {
                  py::gil_scoped_release release;
                  res = solve_heuristic(c, g, cfg);
              }
              auto d = solution_dict(res.solution);
              d["objective"] = res.objective;
              d["total_iterations"] = res.trace.total_iterations;
              d["best_start"] = res.trace.best_start;
              std::vector<double> finals;
              for (const auto& s : res.trace.starts) finals.push_back(s.final_objective);
              d["start_objectives"] = finals;
              return d;
          },
          py::arg("c"), py::arg("g"), py::arg("starts") = 10, py::arg("it_max") = 12, py::arg("epsilon") = 1e-5,
          py::arg("seed") = 1);

    m.def("sweep",
          [](const PreferenceMatrix& c, std::size_t g_max, const std::string& method, std::uint64_t seed) {
              SolverSettings settings;
              settings.heuristic.base_seed = seed;
              const auto rows = run_sweep(c, g_max, parse_method(method), settings);
              return py::module_::import("json").attr("loads")(io::sweep_to_json(rows, parse_method(method)).dump());
          },
          py::arg("c"), py::arg("g_max"), py::arg("method") = "exact", py::arg("seed") = 1);

    m.def("generate_instance",
          [](std::size_t n, std::size_t g_true, std::vector<double> weights, std::optional<double> p,
             std::optional<std::size_t> D, std::size_t num_rankings, std::optional<std::size_t> min_separation,
             std::uint64_t seed) {
              GeneratorSpec spec;
              spec.n = n;
              spec.g_true = g_true;
              spec.weights = weights.empty() ? weights_from_ratio(std::vector<double>(g_true, 1.0)) : weights;
              spec.p = p;
              spec.D = D;
              spec.num_rankings = num_rankings;
              spec.min_separation = min_separation;
              spec.seed = seed;
              const auto inst = generate_instance(spec);
              py::list centers, rankings;
              for (const auto& o : inst.sample.centers) centers.append(perm_of(o));
              for (const auto& o : inst.sample.rankings) rankings.append(perm_of(o));
              py::dict d;
              d["matrix"] = inst.matrix;
              d["centers"] = centers;
              d["rankings"] = rankings;
              d["labels"] = inst.sample.labels;
              d["counts"] = inst.sample.counts;
              d["D"] = spec.dispersion();
              return d;
          },
          py::arg("n"), py::arg("g_true") = 1, py::arg("weights") = std::vector<double>{}, py::arg("p") = py::none(),
          py::arg("D") = py::none(), py::arg("num_rankings") = 1000, py::arg("min_separation") = py::none(),
          py::arg("seed") = 1);

    m.def("mahonian_counts", &mahonian_counts, py::arg("n"));
    m.def("dispersion_from_percentage", &dispersion_from_percentage, py::arg("n"), py::arg("p"));
    m.def("weights_from_ratio", [](const std::vector<double>& r) { return weights_from_ratio(r); }, py::arg("ratio"));

    m.def("ingest_rankings",
          [](const std::string& text, const std::string& format) {
              std::istringstream in(text);
              const auto res = ingest_rankings(in, format == "sushi" ? RankingFormat::sushi : RankingFormat::plain);
              return py::make_tuple(res.matrix, res.rankings);
          },
          py::arg("text"), py::arg("format") = "plain");

    m.def("cycle_residuals",
          [](const std::vector<double>& point, std::size_t n) {
              py::list out;
              for (const auto& r : cycle_residuals(point, n))
                  out.append(py::make_tuple(py::make_tuple(r.triple[0], r.triple[1], r.triple[2]), r.residual));
              return out;
          },
          py::arg("point"), py::arg("n"));
    m.def("l1_projection",
          [](const std::vector<double>& point, std::size_t n) {
              const auto p = l1_projection_full(point, n);
              return py::make_tuple(p.point, p.distance);
          },
          py::arg("point"), py::arg("n"));
    m.def("polytope_membership", [](const std::vector<double>& p, std::size_t n) { return polytope_membership(p, n); },
          py::arg("point"), py::arg("n"));
    m.def("caratheodory_saturation",
          [](const std::vector<double>& p, std::size_t n) { return caratheodory_saturation(p, n); }, py::arg("point"),
          py::arg("n"));
}
