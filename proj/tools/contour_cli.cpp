// Command-line front end: seeded studies, the Monte-Carlo oracles and
// analysis of user CSV files. Exit status 0 on success, 1 on usage errors,
// 2 on data errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contour/errors.hpp"
#include "contour/gcr.hpp"
#include "contour/harness/analyze.hpp"
#include "contour/harness/config.hpp"
#include "contour/harness/report.hpp"
#include "contour/harness/study.hpp"
#include "contour/simd/kernels.hpp"
#include "contour/simgen.hpp"

namespace {

using namespace contour;
using namespace contour::harness;

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct OutputOptions {
  std::string format = "text";
  std::string out;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--format", o.format, "Output format: json, text or tsv")
      ->check(CLI::IsMember({"json", "text", "tsv"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
}

void write_output(const OutputOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file " + o.out);
  f << text;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct StudyOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::size_t> replicates;
  std::string norm;
  OutputOptions output;
};

void add_study_options(CLI::App* cmd, StudyOptions& o) {
  cmd->add_option("--config", o.config, "Study config (key = value text, or JSON)")->required();
  cmd->add_option("--seed", o.seed, "Override master_seed");
  cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
  cmd->add_option("--replicates", o.replicates, "Override the replicate count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--norm", o.norm, "Subspace distance norm")
      ->check(CLI::IsMember({"frobenius", "spectral"}));
  add_output_options(cmd, o.output);
}

StudyConfig resolve_study_config(const StudyOptions& o) {
  StudyConfig cfg = load_config(o.config);
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (o.replicates) cfg.replicates = *o.replicates;
  if (!o.norm.empty()) cfg.norm = norm_from_string(o.norm);
  validate(cfg);
  return cfg;
}

int run_study_command(const StudyOptions& o, bool eigen) {
  const StudyConfig cfg = resolve_study_config(o);
  const StudyReport report = eigen ? run_eigen_study(cfg) : run_study(cfg);
  write_output(o.output, emit_report(report, format_from_string(o.output.format)));
  return 0;
}

struct OracleOptions {
  std::string model = "ex2_1";
  double sigma = 0.3;
  std::vector<double> c{0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  std::size_t pairs = 1000000;
  std::uint64_t seed = 20050101;
  unsigned workers = 0;
  std::string scale = "standardized";
  OutputOptions output;
};

int run_oracle_command(const OracleOptions& o) {
  const ModelId model = model_from_string(o.model);
  const unsigned workers = o.workers ? o.workers : std::max(1u, std::thread::hardware_concurrency());
  const ReportFormat format = format_from_string(o.output.format);
  Json rows = Json::array();
  std::ostringstream text;
  std::ostringstream tsv;
  tsv.precision(17);
  if (model == ModelId::Ex2_3) {
    const OracleScale scale = o.scale == "raw" ? OracleScale::Raw : OracleScale::Standardized;
    text << "c         K11       K12       K22\n";
    tsv << "c\tk11\tk12\tk22\n";
    for (double c : o.c) {
      const Matrix k = oracle_binary_k(c, o.pairs, o.seed, scale, workers);
      rows.push_back({{"c", c}, {"k11", k(0, 0)}, {"k12", k(0, 1)}, {"k22", k(1, 1)}});
      text << fixed(c, 3) << "  " << fixed(k(0, 0), 6) << "  " << fixed(k(0, 1), 6) << "  "
           << fixed(k(1, 1), 6) << "\n";
      tsv << c << '\t' << k(0, 0) << '\t' << k(0, 1) << '\t' << k(1, 1) << '\n';
    }
  } else {
    text << "c         lambda1   lambda2   accepted\n";
    tsv << "c\tlambda1\tlambda2\taccepted\n";
    for (double c : o.c) {
      const LambdaPair l = oracle_lambda(model, c, o.sigma, o.pairs, o.seed, workers);
      rows.push_back({{"c", c}, {"lambda1", l.lambda1}, {"lambda2", l.lambda2}, {"accepted", l.accepted}});
      text << fixed(c, 3) << "  " << fixed(l.lambda1, 6) << "  " << fixed(l.lambda2, 6) << "  "
           << l.accepted << "\n";
      tsv << c << '\t' << l.lambda1 << '\t' << l.lambda2 << '\t' << l.accepted << '\n';
    }
  }
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["model"] = std::string(to_string(model));
  if (model != ModelId::Ex2_3) j["sigma"] = o.sigma;
  if (model == ModelId::Ex2_3) j["scale"] = o.scale;
  j["pairs"] = o.pairs;
  j["seed"] = o.seed;
  j["rows"] = std::move(rows);
  switch (format) {
    case ReportFormat::Json: write_output(o.output, j.dump(2) + "\n"); break;
    case ReportFormat::Tsv: write_output(o.output, tsv.str()); break;
    case ReportFormat::AlignedText: write_output(o.output, text.str()); break;
  }
  return 0;
}

struct TubeOptions {
  int p = 10;
  std::vector<double> rho{1.0, 2.0};
  std::size_t samples = 500000;
  std::uint64_t seed = 20050101;
  unsigned workers = 0;
  OutputOptions output;
};

int run_tube_command(const TubeOptions& o) {
  const unsigned workers = o.workers ? o.workers : std::max(1u, std::thread::hardware_concurrency());
  Json rows = Json::array();
  std::ostringstream text;
  std::ostringstream tsv;
  tsv.precision(17);
  text << "p    rho       probability\n";
  tsv << "p\trho\tprobability\n";
  for (double rho : o.rho) {
    const double prob = tube_capture_probability(o.p, rho, o.samples, o.seed, workers);
    rows.push_back({{"rho", rho}, {"probability", prob}});
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-4d %-9.4g %.6g\n", o.p, rho, prob);
    text << buf;
    tsv << o.p << '\t' << rho << '\t' << prob << '\n';
  }
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["p"] = o.p;
  j["samples"] = o.samples;
  j["seed"] = o.seed;
  j["rows"] = std::move(rows);
  switch (format_from_string(o.output.format)) {
    case ReportFormat::Json: write_output(o.output, j.dump(2) + "\n"); break;
    case ReportFormat::Tsv: write_output(o.output, tsv.str()); break;
    case ReportFormat::AlignedText: write_output(o.output, text.str()); break;
  }
  return 0;
}

struct AnalyzeOptions {
  std::string csv;
  std::string response;
  std::vector<std::string> predictors;
  std::string method = "gcr";
  int q = 2;
  std::string threshold = "proportion:0.15";
  double rho = 3.5;
  int slices = 6;
  std::size_t pair_subsample = 0;
  std::string scores;
  OutputOptions output;
};

int run_analyze_command(const AnalyzeOptions& o) {
  AnalysisRequest req;
  req.response_column = o.response;
  req.predictors = o.predictors;
  req.q = o.q;
  req.method.method = method_from_string(o.method);
  req.method.threshold = ThresholdRule::parse(o.threshold);
  req.method.rho = o.rho;
  req.method.n_slices = o.slices;
  req.method.pair_subsample = o.pair_subsample;
  const AnalysisReport report = analyze_csv(o.csv, req);
  const ReportFormat format = format_from_string(o.output.format);
  if (format == ReportFormat::Json) {
    write_output(o.output, analysis_to_json(report).dump(2) + "\n");
  } else if (format == ReportFormat::Tsv) {
    std::ostringstream s;
    write_scores_csv(s, report);
    write_output(o.output, s.str());
  } else {
    write_output(o.output, analysis_to_text(report));
  }
  if (!o.scores.empty()) {
    std::ofstream f(o.scores, std::ios::binary);
    if (!f) throw InvalidArgument("cannot open scores file " + o.scores);
    write_scores_csv(f, report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contour-based dimension reduction: studies, oracles and CSV analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "contour 1.0");

  StudyOptions study;
  auto* study_cmd = app.add_subcommand("study", "Distance study over a parameter grid");
  add_study_options(study_cmd, study);

  StudyOptions eigen;
  auto* eigen_cmd = app.add_subcommand("eigen-study", "Replicate-averaged eigenvalues of the contour test matrices");
  add_study_options(eigen_cmd, eigen);

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Monte-Carlo population moments for the two-predictor examples");
  oracle_cmd->add_option("--model", oracle.model, "ex2_1, ex2_2 or ex2_3")
      ->check(CLI::IsMember({"ex2_1", "ex2_2", "ex2_3"}))
      ->capture_default_str();
  oracle_cmd->add_option("--sigma", oracle.sigma, "Noise level")->capture_default_str();
  oracle_cmd->add_option("--c", oracle.c, "Cutoffs")->delimiter(',');
  oracle_cmd->add_option("--pairs", oracle.pairs, "Simulated pairs per cutoff")->capture_default_str();
  oracle_cmd->add_option("--seed", oracle.seed)->capture_default_str();
  oracle_cmd->add_option("--workers", oracle.workers, "Worker threads (0 = all cores)");
  oracle_cmd->add_option("--scale", oracle.scale, "ex2_3 only: standardized or raw")
      ->check(CLI::IsMember({"standardized", "raw"}));
  add_output_options(oracle_cmd, oracle.output);

  TubeOptions tube;
  auto* tube_cmd = app.add_subcommand("tube-prob", "Probability that a third normal point falls in a tube");
  tube_cmd->add_option("--p", tube.p, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
  tube_cmd->add_option("--rho", tube.rho, "Tube radii")->delimiter(',');
  tube_cmd->add_option("--samples", tube.samples)->capture_default_str();
  tube_cmd->add_option("--seed", tube.seed)->capture_default_str();
  tube_cmd->add_option("--workers", tube.workers, "Worker threads (0 = all cores)");
  add_output_options(tube_cmd, tube.output);

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Estimate the central subspace of a CSV data set");
  analyze_cmd->add_option("csv", analyze.csv, "Input CSV with a header row")->required();
  analyze_cmd->add_option("--response", analyze.response, "Response column name")->required();
  analyze_cmd->add_option("--predictors", analyze.predictors, "Predictor columns (default: all others)")
      ->delimiter(',');
  analyze_cmd->add_option("--method", analyze.method, "scr, gcr, ols, sir, save or phd")
      ->check(CLI::IsMember({"scr", "gcr", "ols", "sir", "save", "phd"}, CLI::ignore_case))
      ->capture_default_str();
  analyze_cmd->add_option("--q", analyze.q, "Structural dimension")->capture_default_str();
  analyze_cmd->add_option("--threshold", analyze.threshold,
                          "Pair threshold: proportion:R, fixed:C or per_qn:K")
      ->capture_default_str();
  analyze_cmd->add_option("--rho", analyze.rho, "GCR tube radius")->capture_default_str();
  analyze_cmd->add_option("--slices", analyze.slices, "SIR/SAVE slice count")->capture_default_str();
  analyze_cmd->add_option("--pair-subsample", analyze.pair_subsample, "GCR: evaluate only this many pairs");
  analyze_cmd->add_option("--scores", analyze.scores, "Write projected coordinates to this CSV");
  add_output_options(analyze_cmd, analyze.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*study_cmd) return run_study_command(study, false);
    if (*eigen_cmd) return run_study_command(eigen, true);
    if (*oracle_cmd) return run_oracle_command(oracle);
    if (*tube_cmd) return run_tube_command(tube);
    if (*analyze_cmd) return run_analyze_command(analyze);
  } catch (const contour::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_data_error() ? kDataError : kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
