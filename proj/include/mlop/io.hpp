#ifndef MLOP_IO_HPP
#define MLOP_IO_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "mlop/core.hpp"
#include "mlop/instances.hpp"
#include "mlop/report.hpp"

namespace mlop::io {

using nlohmann::json;

// Instance file: {"n": int, "c_upper": [row-major strict upper triangle]}.
// A full matrix under "c" is also accepted; its diagonal (number or null) is
// ignored and normalization is validated.
PreferenceMatrix matrix_from_json(const json& j);
json matrix_to_json(const PreferenceMatrix& c);
PreferenceMatrix read_matrix_file(const std::string& path);

json counts_to_json(const std::vector<std::vector<std::uint64_t>>& counts);
json metadata_to_json(const Instance& inst);

json order_to_json(const LinearOrder& o);  // 1-based permutation
LinearOrder order_from_json(const json& j, std::size_t n);

json report_to_json(const SolveReport& rep);

/// Re-derives every number in a solve report from its orders and weights.
/// Returns the list of problems found; empty means the report is valid.
std::vector<std::string> validate_report(const json& report, const PreferenceMatrix& c);

json sweep_to_json(const std::vector<SweepRow>& rows, Method method);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mlop::io

#endif
