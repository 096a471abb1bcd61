#pragma once

// Study configuration and its two serialisations: the flat `key = value`
// text format read by the CLI, and the JSON object embedded in reports.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "contour/linalg.hpp"
#include "contour/scr.hpp"
#include "contour/simgen.hpp"

namespace contour::harness {

using Json = nlohmann::ordered_json;

/// Threshold as written in a config. `per_qn:k` means r = k q n / C(n, 2),
/// resolved once n and q are known.
struct ThresholdRule {
  enum class Kind { Fixed, Proportion, PerQn };
  Kind kind = Kind::Proportion;
  double value = 0.05;

  ThresholdSpec resolve(std::size_t n, int q) const;
  std::string to_string() const;
  static ThresholdRule parse(std::string_view text);
};

struct MethodConfig {
  Method method = Method::SCR;
  ThresholdRule threshold;     // SCR, GCR
  double rho = 1.0;            // GCR
  std::size_t pair_subsample = 0;  // GCR
  int n_slices = 0;            // SIR, SAVE; 0 picks default_slice_count(n)
};

struct StudyConfig {
  ModelId model = ModelId::Ex6_1;
  std::vector<double> grid{0.1};  // sigma values, or a values for ex6_5
  std::size_t n = 100;
  std::size_t replicates = 500;
  std::vector<MethodConfig> methods;
  int q = 0;  // 0 means the model's structural dimension
  Norm norm = Norm::Frobenius;
  std::uint64_t master_seed = 20050101;
  unsigned workers = 0;  // 0 means hardware concurrency; not part of the report body

  int resolved_q() const { return q > 0 ? q : structural_dimension(model); }
  unsigned resolved_workers() const;
};

/// Parameters a method gets when the config names it without overrides.
MethodConfig default_method_config(Method m, ModelId model);

void validate(const StudyConfig& cfg);

StudyConfig parse_config_text(std::string_view text);
std::string to_config_text(const StudyConfig& cfg);

Json to_json(const StudyConfig& cfg);
StudyConfig config_from_json(const Json& j);

/// Reads a config file; a file whose first non-blank character is `{` is
/// taken as JSON (a bare config object or a whole report).
StudyConfig load_config(const std::filesystem::path& path);

}  // namespace contour::harness
