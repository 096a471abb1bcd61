#pragma once

// General contour regression. A pair of observations is a contour candidate
// when the response varies little inside the tube of radius rho around the
// line through the two points; the estimate is then formed as in SCR, but
// entirely on the whitened scale.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "contour/linalg.hpp"
#include "contour/scr.hpp"

namespace contour {

struct TubeConfig {
  double rho = 1.0;
  ThresholdSpec threshold = ThresholdSpec::proportion(0.05);
  // When non-zero and below C(n, 2), only this many uniformly drawn pairs
  // are scored and the proportion applies to them.
  std::size_t pair_subsample = 0;
  std::uint64_t subsample_seed = 0;
};

struct TubeStats {
  std::size_t member_count = 0;
  double mean_y = 0.0;
  double variance_y = 0.0;
};

/// Euclidean distance from x_k to the line through x_i and x_j.
double point_line_distance(const Eigen::Ref<const Vector>& x_k, const Eigen::Ref<const Vector>& x_i,
                           const Eigen::Ref<const Vector>& x_j);

/// Rows of z within distance rho of the line through rows i and j, ascending.
std::vector<Eigen::Index> tube_members(const Matrix& z, Eigen::Index i, Eigen::Index j, double rho);

/// Response mean and 1/n_ij variance over the tube through rows i and j.
TubeStats tube_stats(const Matrix& z, const Vector& y, Eigen::Index i, Eigen::Index j,
                     const TubeConfig& cfg);

/// Scores every pair of the index set by its tube variance and thresholds
/// the scores. Pairs with coincident rows are skipped and counted.
PairSelection select_pairs_gcr(const Matrix& z, const Vector& y, const TubeConfig& cfg);

SubspaceEstimate gcr_fit(const Dataset& d, int q, const TubeConfig& cfg);

/// 2 I - G, where G is the average of (z_i - z_j)(z_i - z_j)^T over the
/// selected pairs.
Matrix gcr_g_matrix(const Dataset& d, const TubeConfig& cfg);

/// Probability that a third N(0, I_p) point lies within rho of the line
/// through two others, by Monte Carlo.
double tube_capture_probability(int p, double rho, std::size_t samples, std::uint64_t seed,
                                unsigned workers = 1);

}  // namespace contour
