#include "contour/harness/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "contour/errors.hpp"

namespace contour::harness {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string centered(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s;
  const std::size_t left = (width - s.size()) / 2;
  return std::string(left, ' ') + s + std::string(width - s.size() - left, ' ');
}

std::vector<double> grid_values(const StudyReport& r) { return r.config.grid; }

std::string grid_label(const StudyReport& r) {
  return r.config.model == ModelId::Ex6_5 ? "a" : "sigma";
}

std::string text_results(const StudyReport& r) {
  std::ostringstream out;
  constexpr std::size_t kCell = 7;
  constexpr std::size_t kLabel = 7;
  std::vector<Method> methods;
  for (const auto& c : r.results) {
    if (std::find(methods.begin(), methods.end(), c.method) == methods.end()) methods.push_back(c.method);
  }
  out << pad_left("", kLabel);
  for (Method m : methods) out << centered(std::string(to_string(m)), 2 * kCell);
  out << "\n" << pad_left(grid_label(r), kLabel);
  for (std::size_t i = 0; i < methods.size(); ++i) out << pad_left("DIST", kCell) << pad_left("SE", kCell);
  out << "\n";
  for (double g : grid_values(r)) {
    out << pad_left(fixed(g, 2), kLabel);
    for (Method m : methods) {
      const auto it = std::find_if(r.results.begin(), r.results.end(), [&](const CellResult& c) {
        return c.method == m && c.grid_value == g;
      });
      if (it == r.results.end() || it->n_ok == 0) {
        out << pad_left("-", kCell) << pad_left("-", kCell);
      } else {
        out << pad_left(fixed(it->mean_dist, 2), kCell)
            << pad_left(fixed(it->se_dist, 2) + (r.config.replicates == 1 ? "*" : ""), kCell);
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string text_eigen(const StudyReport& r) {
  std::ostringstream out;
  constexpr std::size_t kCell = 16;
  for (double g : grid_values(r)) {
    std::vector<const EigenCell*> cells;
    for (const auto& c : r.eigen) {
      if (c.grid_value == g) cells.push_back(&c);
    }
    if (cells.empty()) continue;
    out << grid_label(r) << " = " << fixed(g, 2) << "\n" << pad_left("EVAL(SE)", 10);
    std::size_t rows = 0;
    for (const auto* c : cells) {
      out << pad_left(std::string(to_string(c->method)), kCell);
      rows = std::max(rows, c->mean.size());
    }
    out << "\n";
    for (std::size_t j = 0; j < rows; ++j) {
      out << pad_left("lambda" + std::to_string(j + 1), 10);
      for (const auto* c : cells) {
        const std::string v = j < c->mean.size()
                                  ? fixed(c->mean[j], 2) + " (" + fixed(c->se[j], 2) + ")"
                                  : "-";
        out << pad_left(v, kCell);
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace

ReportFormat format_from_string(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "text") return ReportFormat::AlignedText;
  if (name == "tsv") return ReportFormat::Tsv;
  throw InvalidArgument("unknown format '" + std::string(name) + "' (json, text, tsv)");
}

Json report_to_json(const StudyReport& report) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = to_json(report.config);
  Json results = Json::array();
  for (const auto& c : report.results) {
    Json row;
    row["method"] = std::string(to_string(c.method));
    row["grid_value"] = c.grid_value;
    row["mean_dist"] = c.mean_dist;
    row["se_dist"] = c.se_dist;
    row["n_ok"] = c.n_ok;
    row["n_failed"] = c.n_failed;
    results.push_back(std::move(row));
  }
  j["results"] = std::move(results);
  if (!report.eigen.empty()) {
    Json eigen = Json::array();
    for (const auto& c : report.eigen) {
      Json row;
      row["method"] = std::string(to_string(c.method));
      row["grid_value"] = c.grid_value;
      row["mean"] = c.mean;
      row["se"] = c.se;
      row["n_ok"] = c.n_ok;
      row["n_failed"] = c.n_failed;
      eigen.push_back(std::move(row));
    }
    j["eigen"] = std::move(eigen);
  }
  j["notes"] = report.notes;
  Json runtime;
  runtime["workers"] = report.workers;
  runtime["simd"] = report.simd;
  runtime["elapsed_seconds"] = report.elapsed_seconds;
  j["runtime"] = std::move(runtime);
  return j;
}

StudyReport report_from_json(const Json& j) {
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw InvalidArgument("unsupported report schema version");
    }
    StudyReport r;
    r.config = config_from_json(j.at("config"));
    for (const auto& row : j.at("results")) {
      CellResult c;
      c.method = method_from_string(row.at("method").get<std::string>());
      c.grid_value = row.at("grid_value").get<double>();
      c.mean_dist = row.at("mean_dist").get<double>();
      c.se_dist = row.at("se_dist").get<double>();
      c.n_ok = row.at("n_ok").get<std::size_t>();
      c.n_failed = row.at("n_failed").get<std::size_t>();
      r.results.push_back(c);
    }
    if (j.contains("eigen")) {
      for (const auto& row : j["eigen"]) {
        EigenCell c;
        c.method = method_from_string(row.at("method").get<std::string>());
        c.grid_value = row.at("grid_value").get<double>();
        c.mean = row.at("mean").get<std::vector<double>>();
        c.se = row.at("se").get<std::vector<double>>();
        c.n_ok = row.at("n_ok").get<std::size_t>();
        c.n_failed = row.at("n_failed").get<std::size_t>();
        r.eigen.push_back(std::move(c));
      }
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("runtime")) {
      const Json& rt = j["runtime"];
      r.workers = rt.at("workers").get<unsigned>();
      r.simd = rt.at("simd").get<std::string>();
      r.elapsed_seconds = rt.at("elapsed_seconds").get<double>();
    }
    return r;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed report JSON: ") + e.what());
  }
}

std::string report_body(const StudyReport& report) {
  Json j = report_to_json(report);
  j.erase("runtime");
  return j.dump(2);
}

std::string emit_report(const StudyReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return report_to_json(report).dump(2) + "\n";
    case ReportFormat::Tsv: {
      std::ostringstream out;
      out.precision(17);
      if (!report.eigen.empty()) {
        out << "method\tgrid_value\tindex\tmean\tse\tn_ok\tn_failed\n";
        for (const auto& c : report.eigen) {
          for (std::size_t k = 0; k < c.mean.size(); ++k) {
            out << to_string(c.method) << '\t' << c.grid_value << '\t' << k + 1 << '\t' << c.mean[k]
                << '\t' << c.se[k] << '\t' << c.n_ok << '\t' << c.n_failed << '\n';
          }
        }
        return out.str();
      }
      out << "method\tgrid_value\tmean_dist\tse_dist\tn_ok\tn_failed\n";
      for (const auto& c : report.results) {
        out << to_string(c.method) << '\t' << c.grid_value << '\t' << c.mean_dist << '\t'
            << c.se_dist << '\t' << c.n_ok << '\t' << c.n_failed << '\n';
      }
      return out.str();
    }
    case ReportFormat::AlignedText: {
      std::ostringstream out;
      out << "model " << to_string(report.config.model) << ", n = " << report.config.n << ", "
          << report.config.replicates << " replicates, " << to_string(report.config.norm)
          << " norm, seed " << report.config.master_seed << "\n\n";
      if (!report.results.empty()) out << text_results(report);
      if (!report.eigen.empty()) out << text_eigen(report);
      for (const auto& note : report.notes) out << "* " << note << "\n";
      return out.str();
    }
  }
  return {};
}

}  // namespace contour::harness
