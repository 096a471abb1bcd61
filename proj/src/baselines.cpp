#include "contour/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "contour/errors.hpp"
#include "contour/scr.hpp"

namespace contour {

namespace {

void check_slices(Eigen::Index n, int q, const SliceSpec& slices) {
  if (slices.n_slices < 2) throw TooFewSlices("at least two slices are required");
  if (n < 2 * static_cast<Eigen::Index>(slices.n_slices)) {
    throw TooFewSlices("n=" + std::to_string(n) + " is too small for " +
                       std::to_string(slices.n_slices) + " slices of two or more points");
  }
  if (q >= slices.n_slices) {
    throw TooFewSlices("q=" + std::to_string(q) + " needs more than " +
                       std::to_string(slices.n_slices) + " slices");
  }
}

std::vector<Eigen::Index> leading(int q) {
  std::vector<Eigen::Index> cols(static_cast<std::size_t>(q));
  std::iota(cols.begin(), cols.end(), Eigen::Index{0});
  return cols;
}

SubspaceEstimate fit_top(const Dataset& d, int q, Method method,
                         Matrix (*kernel)(const Matrix&, const Vector&, const SliceSpec&),
                         const SliceSpec& slices) {
  require_structural_dimension(q, d.p());
  check_slices(d.n(), q, slices);
  const StandardizedData s = standardize(d);
  const EigenDecomposition eig = sym_eigen(kernel(s.z, d.y(), slices));
  return back_transform(eig, s.inv_sqrt_cov, leading(q), method);
}

}  // namespace

int default_slice_count(Eigen::Index n) { return n >= 300 ? 10 : 6; }

std::vector<std::vector<Eigen::Index>> equal_count_slices(const Vector& y, int n_slices) {
  const Eigen::Index n = y.size();
  if (n_slices < 1 || n_slices > n) throw TooFewSlices("slice count must lie in [1, n]");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return y[a] < y[b]; });
  std::vector<std::vector<Eigen::Index>> out(static_cast<std::size_t>(n_slices));
  for (int h = 0; h < n_slices; ++h) {
    const Eigen::Index begin = h * n / n_slices;
    const Eigen::Index end = (h + 1) * n / n_slices;
    out[static_cast<std::size_t>(h)].assign(order.begin() + begin, order.begin() + end);
  }
  return out;
}

SubspaceEstimate ols_direction(const Dataset& d) {
  const StandardizedData s = standardize(d);
  const Vector yc = d.y().array() - d.y().mean();
  // Sigma^{-1/2} cov(X, Y) equals the covariance of Z with Y.
  const Vector zy = s.z.transpose() * yc / static_cast<double>(d.n());
  const double scale = zy.norm();
  if (!(scale > 0.0)) throw Error("OLS direction is undefined: zero predictor-response covariance");
  SubspaceEstimate out;
  out.method = Method::OLS;
  out.basis = orthonormalize(s.inv_sqrt_cov * zy);
  out.eigenvalues = Vector::Zero(d.p());
  out.eigenvalues(0) = scale * scale;
  return out;
}

Matrix sir_kernel(const Matrix& z, const Vector& y, const SliceSpec& slices) {
  const double n = static_cast<double>(z.rows());
  Matrix m = Matrix::Zero(z.cols(), z.cols());
  for (const auto& slice : equal_count_slices(y, slices.n_slices)) {
    Vector mean = Vector::Zero(z.cols());
    for (Eigen::Index i : slice) mean += z.row(i).transpose();
    mean /= static_cast<double>(slice.size());
    m += (static_cast<double>(slice.size()) / n) * mean * mean.transpose();
  }
  return m;
}

Matrix save_kernel(const Matrix& z, const Vector& y, const SliceSpec& slices) {
  const double n = static_cast<double>(z.rows());
  const Eigen::Index p = z.cols();
  Matrix m = Matrix::Zero(p, p);
  for (const auto& slice : equal_count_slices(y, slices.n_slices)) {
    const double size = static_cast<double>(slice.size());
    Vector mean = Vector::Zero(p);
    for (Eigen::Index i : slice) mean += z.row(i).transpose();
    mean /= size;
    Matrix var = Matrix::Zero(p, p);
    for (Eigen::Index i : slice) {
      const Vector c = z.row(i).transpose() - mean;
      var += c * c.transpose();
    }
    var /= size;
    const Matrix gap = Matrix::Identity(p, p) - var;
    m += (size / n) * gap * gap;
  }
  return m;
}

Matrix phd_kernel(const Matrix& z, const Vector& y) {
  const Vector yc = y.array() - y.mean();
  return z.transpose() * yc.asDiagonal() * z / static_cast<double>(z.rows());
}

SubspaceEstimate sir_fit(const Dataset& d, int q, const SliceSpec& slices) {
  return fit_top(d, q, Method::SIR, &sir_kernel, slices);
}

SubspaceEstimate save_fit(const Dataset& d, int q, const SliceSpec& slices) {
  return fit_top(d, q, Method::SAVE, &save_kernel, slices);
}

SubspaceEstimate phd_fit(const Dataset& d, int q) {
  require_structural_dimension(q, d.p());
  const StandardizedData s = standardize(d);
  const EigenDecomposition eig = sym_eigen(phd_kernel(s.z, d.y()));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d.p()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(eig.values(a)) > std::abs(eig.values(b));
  });
  order.resize(static_cast<std::size_t>(q));
  return back_transform(eig, s.inv_sqrt_cov, order, Method::PHD);
}

}  // namespace contour
