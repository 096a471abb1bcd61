#include "contour/harness/analyze.hpp"

#include <cstdio>
#include <sstream>

#include "contour/errors.hpp"
#include "contour/harness/study.hpp"

namespace contour::harness {

AnalysisReport analyze_table(const CsvTable& table, const AnalysisRequest& request) {
  const Eigen::Index response_col = table.column(request.response_column);
  if (response_col < 0) {
    throw ParseError("response column '" + request.response_column + "' not found in CSV header");
  }
  std::vector<Eigen::Index> predictor_cols;
  AnalysisReport report;
  report.request = request;
  report.response_name = request.response_column;
  if (request.predictors.empty()) {
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(table.header.size()); ++c) {
      if (c != response_col) predictor_cols.push_back(c);
    }
  } else {
    for (const auto& name : request.predictors) {
      const Eigen::Index c = table.column(name);
      if (c < 0) throw ParseError("predictor column '" + name + "' not found in CSV header");
      if (c == response_col) throw InvalidArgument("the response cannot also be a predictor");
      predictor_cols.push_back(c);
    }
  }
  if (predictor_cols.empty()) throw ParseError("CSV has no predictor columns");
  for (Eigen::Index c : predictor_cols) report.predictor_names.push_back(table.header[static_cast<std::size_t>(c)]);

  const Eigen::Index n = table.values.rows();
  const auto p = static_cast<Eigen::Index>(predictor_cols.size());
  if (n <= p) {
    throw Error("analysis needs more observations (" + std::to_string(n) + ") than predictors (" +
                std::to_string(p) + ")");
  }
  Matrix x(n, p);
  for (Eigen::Index k = 0; k < p; ++k) x.col(k) = table.values.col(predictor_cols[static_cast<std::size_t>(k)]);
  report.response = table.values.col(response_col);
  const Dataset d(x, report.response);

  report.estimate = fit_method(d, request.method.method == Method::OLS ? 1 : request.q, request.method);
  const Vector mean = x.colwise().mean().transpose();
  report.scores = (x.rowwise() - mean.transpose()) * report.estimate.basis;
  return report;
}

AnalysisReport analyze_csv(const std::filesystem::path& path, const AnalysisRequest& request) {
  return analyze_table(read_csv_file(path), request);
}

Json analysis_to_json(const AnalysisReport& report) {
  Json j;
  j["schema_version"] = 1;
  j["method"] = std::string(to_string(report.estimate.method));
  j["response"] = report.response_name;
  j["q"] = report.estimate.dim();
  j["n"] = report.response.size();
  const MethodConfig& mc = report.request.method;
  if (mc.method == Method::SCR || mc.method == Method::GCR) j["threshold"] = mc.threshold.to_string();
  if (mc.method == Method::GCR) j["rho"] = mc.rho;
  if (mc.method == Method::SIR || mc.method == Method::SAVE) j["n_slices"] = mc.n_slices;
  Json basis = Json::object();
  for (std::size_t r = 0; r < report.predictor_names.size(); ++r) {
    std::vector<double> row;
    for (Eigen::Index c = 0; c < report.estimate.basis.cols(); ++c) {
      row.push_back(report.estimate.basis(static_cast<Eigen::Index>(r), c));
    }
    basis[report.predictor_names[r]] = row;
  }
  j["basis"] = std::move(basis);
  const Vector& ev = report.estimate.eigenvalues;
  j["spectrum"] = std::vector<double>(ev.data(), ev.data() + ev.size());
  return j;
}

std::string analysis_to_text(const AnalysisReport& report) {
  std::ostringstream out;
  char buf[64];
  out << to_string(report.estimate.method) << " on " << report.response.size()
      << " observations, response '" << report.response_name << "', q = " << report.estimate.dim()
      << "\n\n" << "basis (predictor scale)\n";
  for (std::size_t r = 0; r < report.predictor_names.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%-12s", report.predictor_names[r].c_str());
    out << buf;
    for (Eigen::Index c = 0; c < report.estimate.basis.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%10.4f", report.estimate.basis(static_cast<Eigen::Index>(r), c));
      out << buf;
    }
    out << "\n";
  }
  out << "\nkernel spectrum (descending)\n";
  for (Eigen::Index k = 0; k < report.estimate.eigenvalues.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%10.4f", report.estimate.eigenvalues(k));
    out << buf;
  }
  out << "\n";
  return out.str();
}

void write_scores_csv(std::ostream& out, const AnalysisReport& report) {
  out << "obs_index";
  for (Eigen::Index c = 0; c < report.scores.cols(); ++c) out << ",dir" << c + 1;
  out << ",response\n";
  out.precision(17);
  for (Eigen::Index i = 0; i < report.scores.rows(); ++i) {
    out << i + 1;
    for (Eigen::Index c = 0; c < report.scores.cols(); ++c) out << ',' << report.scores(i, c);
    out << ',' << report.response(i) << '\n';
  }
}

}  // namespace contour::harness
