#pragma once

// Dimension reduction on a user-supplied CSV: fit one method, report the
// basis by column name, the kernel spectrum and per-observation scores.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "contour/harness/config.hpp"
#include "contour/harness/csv.hpp"

namespace contour::harness {

struct AnalysisRequest {
  std::string response_column;
  std::vector<std::string> predictors;  // empty: every other column
  MethodConfig method;
  int q = 1;
};

struct AnalysisReport {
  std::string response_name;
  std::vector<std::string> predictor_names;
  AnalysisRequest request;
  SubspaceEstimate estimate;
  Matrix scores;    // (x_i - mean) projected on the basis, n x q
  Vector response;
};

AnalysisReport analyze_table(const CsvTable& table, const AnalysisRequest& request);
AnalysisReport analyze_csv(const std::filesystem::path& path, const AnalysisRequest& request);

Json analysis_to_json(const AnalysisReport& report);
std::string analysis_to_text(const AnalysisReport& report);

/// Columns obs_index, dir1..dirq, response.
void write_scores_csv(std::ostream& out, const AnalysisReport& report);

}  // namespace contour::harness
