#include "contour/harness/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "contour/baselines.hpp"
#include "contour/errors.hpp"

namespace contour::harness {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    std::string item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw InvalidArgument("config key '" + std::string(key) + "': '" + t + "' is not a number");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view key) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw InvalidArgument("config key '" + std::string(key) + "': '" + t +
                          "' is not a non-negative integer");
  }
  return v;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

MethodConfig* find_method(StudyConfig& cfg, Method m) {
  for (auto& mc : cfg.methods) {
    if (mc.method == m) return &mc;
  }
  return nullptr;
}

}  // namespace

ThresholdSpec ThresholdRule::resolve(std::size_t n, int q) const {
  switch (kind) {
    case Kind::Fixed:
      return ThresholdSpec::fixed(value);
    case Kind::Proportion:
      return ThresholdSpec::proportion(value);
    case Kind::PerQn: {
      const double r = value * q * static_cast<double>(n) / static_cast<double>(pair_count(n));
      return ThresholdSpec::proportion(std::min(1.0, r));
    }
  }
  return ThresholdSpec::proportion(value);
}

std::string ThresholdRule::to_string() const {
  const char* prefix = kind == Kind::Fixed ? "fixed:" : kind == Kind::PerQn ? "per_qn:" : "proportion:";
  return prefix + format_double(value);
}

ThresholdRule ThresholdRule::parse(std::string_view text) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  if (colon == std::string::npos) {
    throw InvalidArgument("threshold '" + t + "' must look like fixed:C, proportion:R or per_qn:K");
  }
  const std::string kind = lower(trim(std::string_view(t).substr(0, colon)));
  ThresholdRule rule;
  rule.value = parse_double(std::string_view(t).substr(colon + 1), "threshold");
  if (kind == "fixed") {
    rule.kind = Kind::Fixed;
  } else if (kind == "proportion") {
    rule.kind = Kind::Proportion;
  } else if (kind == "per_qn") {
    rule.kind = Kind::PerQn;
  } else {
    throw InvalidArgument("unknown threshold kind '" + kind + "'");
  }
  if (!(rule.value > 0.0)) throw InvalidArgument("threshold value must be positive");
  if (rule.kind == Kind::Proportion && rule.value > 1.0) {
    throw InvalidArgument("threshold proportion must be at most 1");
  }
  return rule;
}

unsigned StudyConfig::resolved_workers() const {
  if (workers > 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

MethodConfig default_method_config(Method m, ModelId model) {
  // Small designs use 6qn / C(n,2) for SCR, 2qn / C(n,2) and rho = 1 for
  // GCR; the p = 10 designs use 5% and rho = 2.
  const bool large = predictor_dimension(model) >= 10;
  MethodConfig mc;
  mc.method = m;
  if (m == Method::SCR) {
    mc.threshold = large ? ThresholdRule{ThresholdRule::Kind::Proportion, 0.05}
                         : ThresholdRule{ThresholdRule::Kind::PerQn, 6.0};
  } else if (m == Method::GCR) {
    mc.threshold = large ? ThresholdRule{ThresholdRule::Kind::Proportion, 0.05}
                         : ThresholdRule{ThresholdRule::Kind::PerQn, 2.0};
    mc.rho = large ? 2.0 : 1.0;
  }
  return mc;
}

void validate(const StudyConfig& cfg) {
  if (cfg.replicates < 1) throw InvalidArgument("replicates must be at least 1");
  if (cfg.methods.empty()) throw InvalidArgument("at least one method is required");
  if (cfg.grid.empty()) throw InvalidArgument("the sigma/a grid is empty");
  if (cfg.n < 2) throw InvalidArgument("n must be at least 2");
  const int p = predictor_dimension(cfg.model);
  const int q = cfg.resolved_q();
  for (const auto& mc : cfg.methods) {
    if (mc.method == Method::OLS) {
      if (q != 1) throw InvalidArgument("OLS estimates a single direction; it needs q = 1");
    } else if (q < 1 || q >= p) {
      throw InvalidArgument("q must satisfy 1 <= q < p");
    }
    if (mc.method == Method::GCR && !(mc.rho > 0.0)) throw InvalidArgument("rho must be positive");
  }
  for (double g : cfg.grid) {
    if (!std::isfinite(g) || g < 0.0) throw InvalidArgument("grid values must be finite and >= 0");
  }
}

StudyConfig parse_config_text(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) + " has no '='");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (kv.count(key) != 0) throw InvalidArgument("config key '" + key + "' repeated");
    kv[key] = trim(std::string_view(line).substr(eq + 1));
  }

  StudyConfig cfg;
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  if (auto v = take("model")) cfg.model = model_from_string(*v);
  const auto sigma = take("sigma_grid");
  const auto a = take("a_grid");
  if (sigma && a) throw InvalidArgument("give sigma_grid or a_grid, not both");
  if (sigma || a) {
    cfg.grid.clear();
    for (const auto& item : split_list(sigma ? *sigma : *a)) {
      cfg.grid.push_back(parse_double(item, sigma ? "sigma_grid" : "a_grid"));
    }
  }
  if (auto v = take("n")) cfg.n = parse_unsigned(*v, "n");
  if (auto v = take("replicates")) cfg.replicates = parse_unsigned(*v, "replicates");
  if (auto v = take("q")) cfg.q = static_cast<int>(parse_unsigned(*v, "q"));
  if (auto v = take("norm")) cfg.norm = norm_from_string(*v);
  if (auto v = take("master_seed")) cfg.master_seed = parse_unsigned(*v, "master_seed");
  if (auto v = take("workers")) cfg.workers = static_cast<unsigned>(parse_unsigned(*v, "workers"));
  if (auto v = take("methods")) {
    for (const auto& name : split_list(*v)) {
      const Method m = method_from_string(name);
      if (find_method(cfg, m) != nullptr) throw InvalidArgument("method listed twice: " + name);
      cfg.methods.push_back(default_method_config(m, cfg.model));
    }
  }
  auto method_key = [&](Method m, const std::string& key) -> MethodConfig* {
    MethodConfig* mc = find_method(cfg, m);
    if (mc == nullptr) {
      throw InvalidArgument("config key '" + key + "' given but " + std::string(to_string(m)) +
                            " is not in methods");
    }
    return mc;
  };
  if (auto v = take("scr_threshold")) method_key(Method::SCR, "scr_threshold")->threshold = ThresholdRule::parse(*v);
  if (auto v = take("gcr_threshold")) method_key(Method::GCR, "gcr_threshold")->threshold = ThresholdRule::parse(*v);
  if (auto v = take("gcr_rho")) method_key(Method::GCR, "gcr_rho")->rho = parse_double(*v, "gcr_rho");
  if (auto v = take("gcr_pair_subsample")) {
    method_key(Method::GCR, "gcr_pair_subsample")->pair_subsample = parse_unsigned(*v, "gcr_pair_subsample");
  }
  if (auto v = take("sir_slices")) method_key(Method::SIR, "sir_slices")->n_slices = static_cast<int>(parse_unsigned(*v, "sir_slices"));
  if (auto v = take("save_slices")) method_key(Method::SAVE, "save_slices")->n_slices = static_cast<int>(parse_unsigned(*v, "save_slices"));
  if (!kv.empty()) throw InvalidArgument("unknown config key '" + kv.begin()->first + "'");
  validate(cfg);
  return cfg;
}

std::string to_config_text(const StudyConfig& cfg) {
  std::ostringstream out;
  out << "model = " << to_string(cfg.model) << "\n";
  out << (cfg.model == ModelId::Ex6_5 ? "a_grid = " : "sigma_grid = ");
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) out << (i ? ", " : "") << format_double(cfg.grid[i]);
  out << "\nn = " << cfg.n << "\nreplicates = " << cfg.replicates << "\nq = " << cfg.resolved_q()
      << "\nnorm = " << to_string(cfg.norm) << "\nmaster_seed = " << cfg.master_seed << "\nmethods = ";
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    out << (i ? ", " : "") << to_string(cfg.methods[i].method);
  }
  out << "\n";
  for (const auto& mc : cfg.methods) {
    switch (mc.method) {
      case Method::SCR:
        out << "scr_threshold = " << mc.threshold.to_string() << "\n";
        break;
      case Method::GCR:
        out << "gcr_threshold = " << mc.threshold.to_string() << "\ngcr_rho = " << format_double(mc.rho)
            << "\n";
        if (mc.pair_subsample > 0) out << "gcr_pair_subsample = " << mc.pair_subsample << "\n";
        break;
      case Method::SIR:
      case Method::SAVE:
        if (mc.n_slices > 0) {
          out << (mc.method == Method::SIR ? "sir_slices = " : "save_slices = ") << mc.n_slices << "\n";
        }
        break;
      default:
        break;
    }
  }
  return out.str();
}

Json to_json(const StudyConfig& cfg) {
  Json j;
  j["model"] = std::string(to_string(cfg.model));
  j["grid"] = cfg.grid;
  j["n"] = cfg.n;
  j["replicates"] = cfg.replicates;
  j["q"] = cfg.resolved_q();
  j["norm"] = std::string(to_string(cfg.norm));
  j["master_seed"] = cfg.master_seed;
  Json methods = Json::array();
  for (const auto& mc : cfg.methods) {
    Json m;
    m["method"] = std::string(to_string(mc.method));
    if (mc.method == Method::SCR || mc.method == Method::GCR) m["threshold"] = mc.threshold.to_string();
    if (mc.method == Method::GCR) {
      m["rho"] = mc.rho;
      m["pair_subsample"] = mc.pair_subsample;
    }
    if (mc.method == Method::SIR || mc.method == Method::SAVE) {
      m["n_slices"] = mc.n_slices > 0 ? mc.n_slices : default_slice_count(static_cast<Eigen::Index>(cfg.n));
    }
    methods.push_back(std::move(m));
  }
  j["methods"] = std::move(methods);
  return j;
}

StudyConfig config_from_json(const Json& j) {
  try {
    StudyConfig cfg;
    cfg.model = model_from_string(j.at("model").get<std::string>());
    cfg.grid = j.at("grid").get<std::vector<double>>();
    cfg.n = j.at("n").get<std::size_t>();
    cfg.replicates = j.at("replicates").get<std::size_t>();
    cfg.q = j.at("q").get<int>();
    cfg.norm = norm_from_string(j.at("norm").get<std::string>());
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    for (const auto& m : j.at("methods")) {
      MethodConfig mc;
      mc.method = method_from_string(m.at("method").get<std::string>());
      if (m.contains("threshold")) mc.threshold = ThresholdRule::parse(m["threshold"].get<std::string>());
      if (m.contains("rho")) mc.rho = m["rho"].get<double>();
      if (m.contains("pair_subsample")) mc.pair_subsample = m["pair_subsample"].get<std::size_t>();
      if (m.contains("n_slices")) mc.n_slices = m["n_slices"].get<int>();
      cfg.methods.push_back(mc);
    }
    validate(cfg);
    return cfg;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON config: ") + e.what());
  }
}

StudyConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw InvalidArgument("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(j.contains("config") ? j["config"] : j);
  }
  return parse_config_text(text);
}

}  // namespace contour::harness
