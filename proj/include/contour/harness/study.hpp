#pragma once

// Seeded comparison studies. Replicate r draws its data from
// derive_seed(master_seed, {r}) for every grid value, so a sigma sweep
// reuses the same predictor and noise realisations. Replicates run in
// parallel and are aggregated in index order, so the result does not depend
// on the worker count.

#include <string>
#include <vector>

#include "contour/harness/config.hpp"

namespace contour::harness {

/// Mean and "SE" (the standard deviation of the replicate distances, the
/// convention of the published tables) for one method at one grid value.
struct CellResult {
  Method method = Method::SCR;
  double grid_value = 0.0;
  double mean_dist = 0.0;
  double se_dist = 0.0;
  std::size_t n_ok = 0;
  std::size_t n_failed = 0;
};

/// Replicate-averaged eigenvalues of the contour diagnostic matrices,
/// ascending in the index j.
struct EigenCell {
  Method method = Method::SCR;
  double grid_value = 0.0;
  std::vector<double> mean;
  std::vector<double> se;
  std::size_t n_ok = 0;
  std::size_t n_failed = 0;
};

struct StudyReport {
  StudyConfig config;
  std::vector<CellResult> results;
  std::vector<EigenCell> eigen;
  std::vector<std::string> notes;
  // Runtime metadata, excluded from comparisons of report bodies.
  unsigned workers = 1;
  double elapsed_seconds = 0.0;
  std::string simd;
};

SubspaceEstimate fit_method(const Dataset& d, int q, const MethodConfig& mc);

StudyReport run_study(const StudyConfig& cfg);

/// Requires every method to be SCR or GCR.
StudyReport run_eigen_study(const StudyConfig& cfg);

/// Sample standard deviation (n - 1 divisor); 0 for fewer than two values.
double sample_sd(const std::vector<double>& values);

}  // namespace contour::harness
