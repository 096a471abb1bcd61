#pragma once

// Simple contour regression: keep the empirical directions x_j - x_i whose
// response increment |y_j - y_i| is small, accumulate their second-moment
// U-statistic and read the central subspace off the trailing eigenvectors.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "contour/linalg.hpp"

namespace contour {

/// Either a fixed cutoff c > 0 or a proportion r in (0, 1] of all C(n,2)
/// empirical directions.
class ThresholdSpec {
 public:
  enum class Mode { FixedC, Proportion };

  static ThresholdSpec fixed(double c);
  static ThresholdSpec proportion(double r);

  Mode mode() const noexcept { return mode_; }
  double value() const noexcept { return value_; }

 private:
  ThresholdSpec(Mode mode, double value) : mode_(mode), value_(value) {}
  Mode mode_;
  double value_;
};

/// Index pairs (i, j), i > j, kept by a threshold, in index-set order
/// (i ascending, then j ascending).
struct PairSelection {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  double effective_c = 0.0;
  double fraction = 0.0;          // pairs.size() / C(n, 2)
  std::size_t skipped_pairs = 0;  // pairs with coincident predictor rows (GCR only)
};

std::size_t pair_count(std::size_t n);

/// Applies `spec` to per-pair scores. `scores[t]` belongs to `candidates[t]`,
/// or to the t-th pair of the full index set when `candidates` is empty;
/// a Proportion threshold keeps the ceil(r * population) smallest scores and
/// every score tied with the cutoff. Throws EmptySelection when nothing
/// qualifies.
PairSelection threshold_pairs(const std::vector<double>& scores,
                              const std::vector<std::pair<std::uint32_t, std::uint32_t>>& candidates,
                              const ThresholdSpec& spec, std::size_t population, std::size_t n);

PairSelection select_pairs_scr(const Vector& y, const ThresholdSpec& spec);

/// Sum of (x_j - x_i)(x_j - x_i)^T over the selected pairs, divided by the
/// full pair count C(n, 2). Accumulation follows the order of `selection`.
Matrix h_matrix(const Matrix& x, const PairSelection& selection);

SubspaceEstimate scr_fit(const Dataset& d, int q, const ThresholdSpec& spec);

/// 2 I - S H S / fraction with S = inverse square root of the sample
/// covariance: the eigenvalue diagnostic whose contour eigenvalues are zero
/// at the population level.
Matrix scr_test_matrix(const Dataset& d, const ThresholdSpec& spec);

void require_structural_dimension(int q, Eigen::Index p);

}  // namespace contour
