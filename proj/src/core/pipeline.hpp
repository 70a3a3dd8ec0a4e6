#ifndef TORIC_PIPELINE_HPP
#define TORIC_PIPELINE_HPP

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "core/problem.hpp"
#include "core/profile.hpp"

namespace toric {

inline constexpr const char* kReportSchema = "toric-soliton/1";
inline constexpr const char* kArtifactVersion = "0.1.0";

struct RunReport {
  // { "report": <hashable tree>, "report_digest": ..., "timings_ms": ... }
  nlohmann::json root;
  std::string verdict;
  int exit_code = 0;  // 0 success, 2 not Fano, 1 stage error
  std::optional<Profile1D> profile;
  std::string problem_name;
};

// Fano gate -> Futaki -> soliton vector -> normalization -> (m = 1) profile
// and residual; stage failures are recorded in the report and still produce
// a partial document.
RunReport run_pipeline(const ProblemSpec& spec);

// Writes <name>.report.json and, for m = 1 runs, <name>.profile.csv into
// out_dir. format is one of "report", "csv", "both". Returns the paths
// written.
std::vector<std::string> emit_report(const RunReport& report,
                                     const std::string& out_dir,
                                     const std::string& format);

}  // namespace toric

#endif
