#include "contour/harness/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>

#include "contour/baselines.hpp"
#include "contour/errors.hpp"
#include "contour/gcr.hpp"
#include "contour/parallel.hpp"
#include "contour/rng.hpp"
#include "contour/scr.hpp"
#include "contour/simd/kernels.hpp"

namespace contour::harness {

namespace {

struct Outcome {
  std::optional<double> value;
  std::string error;
};

struct EigenOutcome {
  std::optional<std::vector<double>> values;
  std::string error;
};

SliceSpec slices_for(const MethodConfig& mc, Eigen::Index n) {
  SliceSpec s;
  s.n_slices = mc.n_slices > 0 ? mc.n_slices : default_slice_count(n);
  return s;
}

TubeConfig tube_for(const MethodConfig& mc, std::size_t n, int q, std::uint64_t seed) {
  TubeConfig t;
  t.rho = mc.rho;
  t.threshold = mc.threshold.resolve(n, q);
  t.pair_subsample = mc.pair_subsample;
  t.subsample_seed = seed;
  return t;
}

LabeledDataset replicate_data(const StudyConfig& cfg, std::size_t replicate, double grid_value) {
  ModelSpec spec;
  spec.id = cfg.model;
  spec.sigma_or_a = grid_value;
  spec.n = cfg.n;
  spec.seed = derive_seed(cfg.master_seed, {replicate});
  return generate(spec);
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void note_failures(std::vector<std::string>& notes, Method m, double grid_value,
                   const std::string& first_error, std::size_t failed) {
  if (failed == 0) return;
  notes.push_back(std::string(to_string(m)) + " at grid value " + std::to_string(grid_value) + ": " +
                  std::to_string(failed) + " replicate(s) excluded; first error: " + first_error);
}

template <class Body>
StudyReport run_common(const StudyConfig& cfg, Body&& body) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  StudyReport report;
  report.config = cfg;
  report.workers = cfg.resolved_workers();
  report.simd = std::string(simd::to_string(simd::active_kernels().isa));
  body(report);
  if (cfg.replicates == 1) {
    report.notes.push_back("replicates = 1: SE is reported as 0");
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

double sample_sd(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double m = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

SubspaceEstimate fit_method(const Dataset& d, int q, const MethodConfig& mc) {
  const auto n = static_cast<std::size_t>(d.n());
  switch (mc.method) {
    case Method::SCR:
      return scr_fit(d, q, mc.threshold.resolve(n, q));
    case Method::GCR:
      return gcr_fit(d, q, tube_for(mc, n, q, 0));
    case Method::OLS:
      return ols_direction(d);
    case Method::SIR:
      return sir_fit(d, q, slices_for(mc, d.n()));
    case Method::SAVE:
      return save_fit(d, q, slices_for(mc, d.n()));
    case Method::PHD:
      return phd_fit(d, q);
  }
  throw InvalidArgument("unsupported method");
}

StudyReport run_study(const StudyConfig& cfg) {
  return run_common(cfg, [&](StudyReport& report) {
    const int q = cfg.resolved_q();
    const std::size_t grid = cfg.grid.size();
    const std::size_t methods = cfg.methods.size();
    const std::size_t reps = cfg.replicates;
    // outcomes[(g * reps + r) * methods + m]
    std::vector<Outcome> outcomes(grid * reps * methods);
    parallel_for(grid * reps, report.workers, [&](std::size_t task) {
      const std::size_t g = task / reps;
      const std::size_t r = task % reps;
      const LabeledDataset data = replicate_data(cfg, r, cfg.grid[g]);
      for (std::size_t m = 0; m < methods; ++m) {
        Outcome& out = outcomes[task * methods + m];
        try {
          const SubspaceEstimate est = fit_method(data.data, q, cfg.methods[m]);
          out.value = subspace_distance(est.basis, data.true_basis, cfg.norm);
        } catch (const Error& e) {
          out.error = e.what();
        }
      }
    });
    for (std::size_t m = 0; m < methods; ++m) {
      for (std::size_t g = 0; g < grid; ++g) {
        std::vector<double> dists;
        std::string first_error;
        std::size_t failed = 0;
        for (std::size_t r = 0; r < reps; ++r) {
          const Outcome& o = outcomes[(g * reps + r) * methods + m];
          if (o.value) {
            dists.push_back(*o.value);
          } else {
            if (failed++ == 0) first_error = o.error;
          }
        }
        CellResult cell;
        cell.method = cfg.methods[m].method;
        cell.grid_value = cfg.grid[g];
        cell.mean_dist = mean_of(dists);
        cell.se_dist = sample_sd(dists);
        cell.n_ok = dists.size();
        cell.n_failed = failed;
        report.results.push_back(cell);
        note_failures(report.notes, cell.method, cell.grid_value, first_error, failed);
      }
    }
  });
}

StudyReport run_eigen_study(const StudyConfig& cfg) {
  for (const auto& mc : cfg.methods) {
    if (mc.method != Method::SCR && mc.method != Method::GCR) {
      throw InvalidArgument("eigen studies support SCR and GCR only");
    }
  }
  return run_common(cfg, [&](StudyReport& report) {
    const int q = cfg.resolved_q();
    const std::size_t grid = cfg.grid.size();
    const std::size_t methods = cfg.methods.size();
    const std::size_t reps = cfg.replicates;
    std::vector<EigenOutcome> outcomes(grid * reps * methods);
    parallel_for(grid * reps, report.workers, [&](std::size_t task) {
      const std::size_t g = task / reps;
      const std::size_t r = task % reps;
      const LabeledDataset data = replicate_data(cfg, r, cfg.grid[g]);
      const auto n = static_cast<std::size_t>(data.data.n());
      for (std::size_t m = 0; m < methods; ++m) {
        EigenOutcome& out = outcomes[task * methods + m];
        const MethodConfig& mc = cfg.methods[m];
        try {
          const Matrix diag = mc.method == Method::SCR
                                  ? scr_test_matrix(data.data, mc.threshold.resolve(n, q))
                                  : gcr_g_matrix(data.data, tube_for(mc, n, q, 0));
          Vector values = sym_eigen(diag).values.reverse();
          out.values = std::vector<double>(values.data(), values.data() + values.size());
        } catch (const Error& e) {
          out.error = e.what();
        }
      }
    });
    for (std::size_t m = 0; m < methods; ++m) {
      for (std::size_t g = 0; g < grid; ++g) {
        std::vector<std::vector<double>> columns;
        std::string first_error;
        std::size_t failed = 0;
        for (std::size_t r = 0; r < reps; ++r) {
          const EigenOutcome& o = outcomes[(g * reps + r) * methods + m];
          if (!o.values) {
            if (failed++ == 0) first_error = o.error;
            continue;
          }
          if (columns.empty()) columns.resize(o.values->size());
          for (std::size_t j = 0; j < o.values->size(); ++j) columns[j].push_back((*o.values)[j]);
        }
        EigenCell cell;
        cell.method = cfg.methods[m].method;
        cell.grid_value = cfg.grid[g];
        for (const auto& col : columns) {
          cell.mean.push_back(mean_of(col));
          cell.se.push_back(sample_sd(col));
        }
        cell.n_ok = reps - failed;
        cell.n_failed = failed;
        report.eigen.push_back(std::move(cell));
        note_failures(report.notes, cfg.methods[m].method, cfg.grid[g], first_error, failed);
      }
    }
  });
}

}  // namespace contour::harness
