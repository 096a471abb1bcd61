#pragma once

// Reference estimators used for comparison: OLS, SIR, SAVE and the
// response-based PHD, in their textbook forms on whitened predictors.

#include <vector>

#include "contour/linalg.hpp"

namespace contour {

struct SliceSpec {
  enum class Scheme { EqualCount };
  int n_slices = 6;
  Scheme scheme = Scheme::EqualCount;
};

/// 6 slices for small samples, 10 from n = 300 upwards.
int default_slice_count(Eigen::Index n);

/// Observation indices per slice after a stable sort on y; slice sizes
/// differ by at most one.
std::vector<std::vector<Eigen::Index>> equal_count_slices(const Vector& y, int n_slices);

SubspaceEstimate ols_direction(const Dataset& d);

/// Kernel matrices on the whitened scale.
Matrix sir_kernel(const Matrix& z, const Vector& y, const SliceSpec& slices);
Matrix save_kernel(const Matrix& z, const Vector& y, const SliceSpec& slices);
Matrix phd_kernel(const Matrix& z, const Vector& y);

SubspaceEstimate sir_fit(const Dataset& d, int q, const SliceSpec& slices);
SubspaceEstimate save_fit(const Dataset& d, int q, const SliceSpec& slices);
SubspaceEstimate phd_fit(const Dataset& d, int q);

}  // namespace contour
