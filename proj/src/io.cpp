#include "mlop/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mlop::io {

PreferenceMatrix matrix_from_json(const json& j) {
    try {
        if (!j.is_object()) throw ValidationError("instance JSON must be an object");
        if (j.contains("c_upper")) {
            const auto n = j.at("n").get<std::size_t>();
            return PreferenceMatrix(n, j.at("c_upper").get<std::vector<double>>());
        }
        if (j.contains("c")) {
            const auto& rows = j.at("c");
            std::vector<std::vector<double>> full;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                std::vector<double> row;
                for (std::size_t s = 0; s < rows[r].size(); ++s)
                    row.push_back(r == s || rows[r][s].is_null() ? 0.0 : rows[r][s].get<double>());
                full.push_back(std::move(row));
            }
            if (j.contains("n") && j.at("n").get<std::size_t>() != full.size())
                throw DimensionError("\"n\" disagrees with the size of \"c\"");
            return PreferenceMatrix::from_full(full);
        }
        throw ValidationError("instance JSON needs \"c_upper\" or \"c\"");
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed instance JSON: ") + e.what());
    }
}

json matrix_to_json(const PreferenceMatrix& c) {
    return json{{"n", c.n()}, {"c_upper", std::vector<double>(c.upper().begin(), c.upper().end())}};
}

PreferenceMatrix read_matrix_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return matrix_from_json(j);
}

json counts_to_json(const std::vector<std::vector<std::uint64_t>>& counts) {
    return json{{"n", counts.size()}, {"a", counts}};
}

json order_to_json(const LinearOrder& o) {
    json arr = json::array();
    for (int item : o.perm()) arr.push_back(item + 1);
    return arr;
}

LinearOrder order_from_json(const json& j, std::size_t n) {
    std::vector<int> perm;
    for (const auto& v : j) perm.push_back(v.get<int>() - 1);
    if (perm.size() != n) throw DimensionError("order has the wrong number of items");
    return LinearOrder(std::move(perm));
}

json metadata_to_json(const Instance& inst) {
    const auto& s = inst.spec;
    json centers = json::array();
    for (const auto& c : inst.sample.centers) centers.push_back(order_to_json(c));
    return json{{"n", s.n},
                {"g_true", s.g_true},
                {"weights", s.weights},
                {"p", s.p ? json(*s.p) : json(nullptr)},
                {"D", s.dispersion()},
                {"num_rankings", s.num_rankings},
                {"min_separation", s.separation()},
                {"seed", s.seed},
                {"centers", centers},
                {"group_counts", inst.sample.counts}};
}

json report_to_json(const SolveReport& rep) {
    json orders = json::array();
    for (const auto& o : rep.solution.orders) orders.push_back(order_to_json(o));
    json j{{"instance", rep.instance_id},
           {"method", to_string(rep.method)},
           {"n", rep.n},
           {"g", rep.g},
           {"objective", rep.objective},
           {"max_form_value", rep.max_form},
           {"fit", rep.fit},
           {"weights", rep.solution.weights},
           {"orders", orders},
           {"proven", rep.proven},
           {"time_s", rep.time_s}};
    if (rep.trace) {
        j["trace"] = json{{"starts", rep.trace->starts},
                          {"total_iterations", rep.trace->total_iterations},
                          {"best_start", rep.trace->best_start},
                          {"start_objectives", rep.trace->start_objectives}};
    }
    return j;
}

std::vector<std::string> validate_report(const json& report, const PreferenceMatrix& c) {
    std::vector<std::string> problems;
    try {
        const auto n = report.at("n").get<std::size_t>();
        if (n != c.n()) {
            problems.push_back("report n does not match the instance");
            return problems;
        }
        MixtureSolution sol;
        for (const auto& o : report.at("orders")) sol.orders.push_back(order_from_json(o, n));
        sol.weights = report.at("weights").get<std::vector<double>>();
        if (sol.groups() != report.at("g").get<std::size_t>()) problems.push_back("number of orders differs from g");
        sol.validate();

        const double objective = report.at("objective").get<double>();
        const double recomputed = l1_objective(sol, c);
        if (std::abs(objective - recomputed) > kTolerance)
            problems.push_back("objective " + std::to_string(objective) + " but orders and weights give " +
                               std::to_string(recomputed));
        const double fit_value = report.at("fit").get<double>();
        if (std::abs(fit_value - fit_from_objective(objective, n)) > 1e-12)
            problems.push_back("fit is not 1 - objective / C(n,2)");
        const double max_form = report.at("max_form_value").get<double>();
        if (std::abs(max_form - (static_cast<double>(num_pairs(n)) - objective)) > kTolerance)
            problems.push_back("max_form_value is not C(n,2) - objective");
        const auto canon = canonicalize(sol);
        if (canon.weights != sol.weights || canon.orders != sol.orders)
            problems.push_back("groups are not in canonical order");
    } catch (const json::exception& e) {
        problems.push_back(std::string("malformed report: ") + e.what());
    } catch (const Error& e) {
        problems.push_back(e.what());
    }
    return problems;
}

json sweep_to_json(const std::vector<SweepRow>& rows, Method method) {
    json arr = json::array();
    for (const auto& r : rows) {
        json orders = json::array();
        for (const auto& o : r.solution.orders) orders.push_back(order_to_json(o));
        arr.push_back(json{{"g", r.g},
                           {"objective", r.objective},
                           {"fit", r.fit},
                           {"relative_drop", r.relative_drop ? json(*r.relative_drop) : json(nullptr)},
                           {"cumulative_drop", r.cumulative_drop ? json(*r.cumulative_drop) : json(nullptr)},
                           {"time_s", r.time_s},
                           {"weights", r.solution.weights},
                           {"orders", orders}});
    }
    return json{{"method", to_string(method)}, {"rows", arr}};
}

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "g,objective,fit,relative_drop,cumulative_drop,time_s\n";
    for (const auto& r : rows) {
        out += std::to_string(r.g) + ',' + num(r.objective) + ',' + num(r.fit) + ',' +
               (r.relative_drop ? num(*r.relative_drop) : "") + ',' +
               (r.cumulative_drop ? num(*r.cumulative_drop) : "") + ',' + num(r.time_s) + '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

}  // namespace mlop::io
