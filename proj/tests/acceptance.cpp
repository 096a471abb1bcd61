// Acceptance suite: one PASS/FAIL line per criterion. Criteria listed with
// --known-failures are still run and reported; they only stop counting
// towards the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brute_force.hpp"
#include "contour/errors.hpp"
#include "contour/gcr.hpp"
#include "contour/harness/config.hpp"
#include "contour/harness/study.hpp"
#include "contour/rng.hpp"
#include "contour/scr.hpp"
#include "contour/simgen.hpp"
#include "properties.hpp"
#include "random_inputs.hpp"

namespace {

using namespace contour;
using namespace contour::harness;
using namespace contour::testing;

struct Options {
  bool smoke = false;
  unsigned workers = 0;
  std::vector<int> only;
  std::vector<int> known_failures;
};

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string f4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Compares a study row against targets; `worst` gets the largest miss.
struct RowCheck {
  bool ok = true;
  std::string text;
};

RowCheck compare(const std::string& label, const std::vector<double>& got,
                 const std::vector<double>& want, double tol) {
  RowCheck r;
  r.text = label + " (";
  for (std::size_t k = 0; k < got.size(); ++k) {
    const bool hit = std::abs(got[k] - want[k]) <= tol;
    r.ok = r.ok && hit;
    r.text += (k ? ", " : "") + f2(got[k]) + (hit ? "" : "!") + "/" + f2(want[k]);
  }
  r.text += ")";
  return r;
}

std::vector<double> row_of(const StudyReport& rep, Method m) {
  std::vector<double> out;
  for (const auto& c : rep.results) {
    if (c.method == m) out.push_back(c.n_ok > 0 ? c.mean_dist : NAN);
  }
  return out;
}

StudyConfig table_config(ModelId model, std::vector<double> grid, std::size_t n, std::size_t reps,
                         std::vector<Method> methods, unsigned workers) {
  StudyConfig cfg;
  cfg.model = model;
  cfg.grid = std::move(grid);
  cfg.n = n;
  cfg.replicates = reps;
  for (Method m : methods) cfg.methods.push_back(default_method_config(m, model));
  cfg.workers = workers;
  return cfg;
}

// Runs `cfg` under Frobenius, then spectral if Frobenius misses. Every
// (method, targets) row must match under the same norm.
Verdict norm_fallback(StudyConfig cfg, const std::vector<std::pair<Method, std::vector<double>>>& rows,
                      double tol) {
  Verdict v;
  std::string log;
  for (Norm norm : {Norm::Frobenius, Norm::Spectral}) {
    cfg.norm = norm;
    const StudyReport rep = run_study(cfg);
    bool ok = true;
    std::string text = std::string(to_string(norm)) + ":";
    for (const auto& [m, want] : rows) {
      const RowCheck r = compare(std::string(to_string(m)), row_of(rep, m), want, tol);
      ok = ok && r.ok;
      text += " " + r.text;
    }
    log += (log.empty() ? "" : "; ") + text;
    if (ok) {
      v.pass = true;
      v.detail = "matched under the " + std::string(to_string(norm)) + " norm; " + log;
      return v;
    }
  }
  v.detail = "no norm matched; " + log;
  return v;
}

Verdict criterion1(const Options& o) {
  StudyConfig cfg = table_config(ModelId::Ex6_1, {0.1, 0.4, 0.8}, 100, 500, {Method::SCR, Method::GCR}, o.workers);
  return norm_fallback(cfg, {{Method::SCR, {0.23, 0.25, 0.31}}, {Method::GCR, {0.16, 0.20, 0.32}}}, 0.05);
}

Verdict criterion2(const Options& o) {
  StudyConfig cfg = table_config(ModelId::Ex6_3, {0.1, 0.2, 0.3}, 100, 500, {Method::GCR}, o.workers);
  return norm_fallback(cfg, {{Method::GCR, {0.10, 0.12, 0.20}}}, 0.05);
}

Verdict criterion3(const Options& o) {
  const std::size_t reps = o.smoke ? 100 : 500;
  const double tol = o.smoke ? 0.12 : 0.07;
  StudyConfig cfg = table_config(ModelId::Ex6_4_quad_p10, {0.1, 0.4, 0.8}, 500, reps,
                                 {Method::SCR, Method::GCR}, o.workers);
  cfg.norm = Norm::Frobenius;
  const StudyReport rep = run_study(cfg);
  const RowCheck scr = compare("SCR", row_of(rep, Method::SCR), {0.34, 0.36, 0.44}, tol);
  const RowCheck gcr = compare("GCR", row_of(rep, Method::GCR), {0.31, 0.36, 0.49}, tol);
  return {scr.ok && gcr.ok, std::to_string(reps) + " replicates, tolerance " + f2(tol) +
                                ", frobenius: " + scr.text + " " + gcr.text};
}

Verdict criterion4(const Options& o) {
  const double cuts[] = {0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  const double want[] = {0.85, 0.90, 1.04, 1.20, 1.34, 1.45, 1.54};
  Verdict v{true, "lambda2 (got/target):"};
  double worst1 = 0.0;
  for (int k = 0; k < 7; ++k) {
    const LambdaPair l = oracle_lambda(ModelId::Ex2_1, cuts[k], 0.3, 1000000, 20050101, o.workers);
    const bool hit = std::abs(l.lambda2 - want[k]) <= 0.02;
    worst1 = std::max(worst1, std::abs(l.lambda1 - 2.0));
    v.pass = v.pass && hit && std::abs(l.lambda1 - 2.0) <= 0.02;
    v.detail += " c=" + f4(cuts[k]) + ": " + f2(l.lambda2) + (hit ? "" : "!") + "/" + f2(want[k]);
  }
  v.detail += "; max |lambda1 - 2| = " + f2(worst1);
  return v;
}

Verdict criterion5(const Options& o) {
  const double p2 = tube_capture_probability(10, 2.0, 500000, 20050101, o.workers);
  const double p1 = tube_capture_probability(10, 1.0, 500000, 20050102, o.workers);
  const bool ok2 = std::abs(p2 - 0.0237) <= 0.0015;
  const bool ok1 = p1 >= 9.4e-5 / 1.5 && p1 <= 9.4e-5 * 1.5;
  return {ok2 && ok1, "rho=2: " + f4(p2) + " (0.0237 +- 0.0015), rho=1: " + f4(p1) +
                          " (9.4e-5 within x1.5)"};
}

Verdict criterion6(const Options&) {
  const LabeledDataset g = generate(ModelSpec{ModelId::Ex6_1, 0.1, 5000, derive_seed(20050101, {6})});
  const ThresholdSpec spec = ThresholdRule::parse("per_qn:6").resolve(5000, 2);
  const Vector ev = sym_eigen(scr_test_matrix(g.data, spec)).values;  // descending
  const double a = ev[ev.size() - 1], b = ev[ev.size() - 2];
  const bool ok = std::abs(a) <= 0.08 && std::abs(b) <= 0.08;
  std::string all;
  for (Eigen::Index k = ev.size() - 1; k >= 0; --k) all += (all.empty() ? "" : ", ") + f2(ev[k]);
  return {ok, "eigenvalues of 2I - S K S ascending: " + all + " (two smallest within 0 +- 0.08)"};
}

Verdict criterion7(const Options& o) {
  StudyConfig cfg = table_config(ModelId::Ex6_4_cos_cube, {0.4}, 500, 500, {Method::SCR, Method::GCR}, o.workers);
  const StudyReport rep = run_eigen_study(cfg);
  Verdict v{true, ""};
  struct Target {
    Method m;
    int j;  // 1-based ascending index
    double want, tol;
  };
  const Target targets[] = {{Method::SCR, 10, 1.17, 0.08}, {Method::SCR, 9, 0.41, 0.08},
                            {Method::SCR, 8, 0.23, 0.06},  {Method::GCR, 10, 1.23, 0.08},
                            {Method::GCR, 9, 0.91, 0.08}};
  for (const auto& t : targets) {
    const auto it = std::find_if(rep.eigen.begin(), rep.eigen.end(), [&](const EigenCell& c) { return c.method == t.m; });
    const double got = it->mean[static_cast<std::size_t>(t.j - 1)];
    const bool hit = std::abs(got - t.want) <= t.tol;
    v.pass = v.pass && hit;
    v.detail += std::string(v.detail.empty() ? "" : ", ") + std::string(to_string(t.m)) + " lambda" +
                std::to_string(t.j) + " " + f2(got) + (hit ? "" : "!") + "/" + f2(t.want) + "+-" + f2(t.tol);
  }
  return v;
}

Verdict criterion8(const Options& o) {
  // Cutoff: mean effective c of the per_qn:6 rule over the n = 100 replicates.
  const std::size_t reps = 200;
  double c_sum = 0.0;
  const ThresholdSpec spec100 = ThresholdRule::parse("per_qn:6").resolve(100, 2);
  for (std::size_t r = 0; r < reps; ++r) {
    const LabeledDataset g = generate(ModelSpec{ModelId::Ex6_1, 0.4, 100, derive_seed(20050101, {r})});
    c_sum += select_pairs_scr(g.data.y(), spec100).effective_c;
  }
  const double c = c_sum / static_cast<double>(reps);
  std::vector<double> lx, ly;
  std::string text = "c = " + f2(c) + ", mean DIST:";
  for (std::size_t n : {100u, 200u, 400u, 800u}) {
    StudyConfig cfg = table_config(ModelId::Ex6_1, {0.4}, n, reps, {Method::SCR}, o.workers);
    cfg.methods[0].threshold = ThresholdRule{ThresholdRule::Kind::Fixed, c};
    const StudyReport rep = run_study(cfg);
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(rep.results.at(0).mean_dist));
    text += " n=" + std::to_string(n) + " " + f2(rep.results.at(0).mean_dist);
  }
  const double mx = (lx[0] + lx[1] + lx[2] + lx[3]) / 4.0, my = (ly[0] + ly[1] + ly[2] + ly[3]) / 4.0;
  double sxy = 0.0, sxx = 0.0;
  for (int k = 0; k < 4; ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  const double slope = sxy / sxx;
  return {slope >= -0.65 && slope <= -0.35, text + "; slope " + f2(slope) + " (want [-0.65, -0.35])"};
}

// Gap between the q-th and (q+1)-th smallest eigenvalues of a fit's kernel.
// With very few pairs the selection graph can force exact ties there, and the
// q-dimensional eigenspace is then not unique.
bool identifiable(const SubspaceEstimate& s, int q) {
  const Vector& ev = s.eigenvalues;  // descending
  const Eigen::Index k = ev.size() - q;
  return ev[k - 1] - ev[k] > 1e-8 * std::max(1.0, std::abs(ev[0]));
}

Verdict criterion9(const Options&) {
  int scr_bad = 0, gcr_bad = 0, h_bad = 0, compared = 0, replaced = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; compared < 100; ++seed) {
    Rng rng(derive_seed(909, {seed}));
    const int n = 6 + static_cast<int>(seed % 7);
    const int p = 3 + static_cast<int>(seed % 2);
    const Matrix x = random_matrix(rng, n, p) * well_conditioned(rng, p);
    Vector y(n);
    for (int i = 0; i < n; ++i) y[i] = x(i, 0) * x(i, 0) + x(i, 1) + 0.2 * rng.normal();
    const Dataset d(x, y);
    const double r = 0.15 + 0.5 * rng.uniform();
    const double rho = 0.5 + 1.5 * rng.uniform();
    TubeConfig cfg;
    cfg.rho = rho;
    cfg.threshold = ThresholdSpec::proportion(r);
    const SubspaceEstimate scr = scr_fit(d, 2, ThresholdSpec::proportion(r));
    const SubspaceEstimate gcr = gcr_fit(d, 2, cfg);
    if (!identifiable(scr, 2) || !identifiable(gcr, 2)) {
      ++replaced;
      continue;
    }
    ++compared;
    const double ds = bf_distance(scr.basis, bf_scr_basis(x, y, 2, BfThreshold{true, r}));
    const double dg = bf_distance(gcr.basis, bf_gcr_basis(x, y, 2, rho, BfThreshold{true, r}));
    worst = std::max({worst, ds, dg});
    scr_bad += ds > 1e-8;
    gcr_bad += dg > 1e-8;

    const double c = 0.5 + rng.uniform();
    PairSelection sel;
    try {
      sel = select_pairs_scr(y, ThresholdSpec::fixed(c));
    } catch (const EmptySelection&) {
    }
    const Matrix h = h_matrix(x, sel), naive = bf_h_matrix_fixed(x, y, c);
    h_bad += !std::equal(h.data(), h.data() + h.size(), naive.data());
  }
  return {scr_bad == 0 && gcr_bad == 0 && h_bad == 0,
          std::to_string(compared) + " datasets (" + std::to_string(replaced) +
              " draws with tied contour eigenvalues replaced): SCR mismatches " + std::to_string(scr_bad) +
              ", GCR mismatches " + std::to_string(gcr_bad) + ", h_matrix bitwise mismatches " +
              std::to_string(h_bad) + ", max distance " + f4(worst)};
}

Verdict criterion10(const Options&) {
  Verdict v{true, ""};
  int passed = 0, total = 0;
  for (const auto& prop : all_properties()) {
    const PropertyOutcome o = prop.run();
    ++total;
    if (o.passed() && o.cases >= kPropertyCases) {
      ++passed;
    } else {
      v.pass = false;
      v.detail += " [" + prop.module + "/" + prop.name + ": " + o.first_failure + "]";
    }
  }
  v.detail = std::to_string(passed) + "/" + std::to_string(total) + " properties, >= " +
             std::to_string(kPropertyCases) + " cases each" + v.detail;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Acceptance criteria"};
  app.add_flag("--smoke", o.smoke, "Reduced replicate count for criterion 3");
  app.add_option("--workers", o.workers, "Worker threads (0 = all cores)");
  app.add_option("--only", o.only, "Run only these criteria")->delimiter(',');
  app.add_option("--known-failures", o.known_failures,
                 "Criteria reported but not counted in the exit status")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Verdict(const Options&)>>> criteria{
      {"ex6_1 contour rows", criterion1},
      {"ex6_3 GCR on the nonelliptical design", criterion2},
      {"ex6_4 quad_p10 contour rows", criterion3},
      {"ex2_1 oracle lambda grid", criterion4},
      {"tube-capture probability", criterion5},
      {"contour eigenvalue calibration at n = 5000", criterion6},
      {"cos_cube eigenvalue separation", criterion7},
      {"root-n rate of SCR", criterion8},
      {"oracle equivalence for n <= 12", criterion9},
      {"invariant property suite", criterion10},
  };
  const std::set<int> only(o.only.begin(), o.only.end());
  const std::set<int> known(o.known_failures.begin(), o.known_failures.end());
  int counted_failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!only.empty() && only.count(id) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second(o);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool excused = !v.pass && known.count(id) != 0;
    if (!v.pass && !excused) ++counted_failures;
    std::printf("%s criterion %d: %s -- %s [%.1fs]%s\n", v.pass ? "PASS" : "FAIL", id,
                criteria[k].first.c_str(), v.detail.c_str(), secs,
                excused ? " (known failure)" : "");
    std::fflush(stdout);
  }
  return counted_failures == 0 ? 0 : 1;
}
