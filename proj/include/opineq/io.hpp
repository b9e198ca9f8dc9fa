#pragma once

// JSON matrix files and suite report emission.

#include <functional>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "opineq/harness.hpp"
#include "opineq/linalg.hpp"

namespace opineq::io {

/// Asymmetry above this is reported through the warning callback on load.
inline constexpr double kAsymmetryWarnThreshold = 1e-9;

using WarningSink = std::function<void(const std::string&)>;

/// {"dim": n, "rows": [[...], ...]}
nlohmann::json matrix_to_json(const SymMatrix& m);
SymMatrix matrix_from_json(const nlohmann::json& j, const WarningSink& warn = {});
SymMatrix read_matrix_file(const std::string& path, const WarningSink& warn = {});

nlohmann::json instance_to_json(const InstanceSpec& spec);
nlohmann::json config_to_json(const SuiteConfig& config);
/// Every SuiteReport field except wall time; a pure function of the config.
nlohmann::json report_body(const SuiteReport& report);
/// {"report": body, "wall_time_s": t}
nlohmann::json report_document(const SuiteReport& report);

void print_report_table(std::ostream& out, const SuiteReport& report);
void print_matrix(std::ostream& out, const SymMatrix& m, int precision = 6);

}  // namespace opineq::io
