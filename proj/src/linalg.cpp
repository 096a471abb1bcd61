#include "contour/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "contour/errors.hpp"

namespace contour {

namespace {

constexpr double kSignTolerance = 1e-12;
constexpr double kOrthonormalTolerance = 1e-8;

void apply_sign_convention(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double v = vectors(r, c);
      if (std::abs(v) > kSignTolerance) {
        if (v < 0) vectors.col(c) *= -1.0;
        break;
      }
    }
  }
}

bool is_orthonormal(const Matrix& basis) {
  const Matrix gram = basis.transpose() * basis;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <=
         kOrthonormalTolerance;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::SCR: return "SCR";
    case Method::GCR: return "GCR";
    case Method::OLS: return "OLS";
    case Method::SIR: return "SIR";
    case Method::SAVE: return "SAVE";
    case Method::PHD: return "PHD";
  }
  return "?";
}

Method method_from_string(std::string_view name) {
  for (Method m : {Method::SCR, Method::GCR, Method::OLS, Method::SIR, Method::SAVE,
                   Method::PHD}) {
    std::string lower(to_string(m));
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == to_string(m) || name == lower) return m;
  }
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Norm n) {
  return n == Norm::Spectral ? "spectral" : "frobenius";
}

Norm norm_from_string(std::string_view name) {
  if (name == "spectral" || name == "Spectral") return Norm::Spectral;
  if (name == "frobenius" || name == "Frobenius") return Norm::Frobenius;
  throw InvalidArgument("unknown norm '" + std::string(name) + "'");
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw NonFiniteInput(std::string(what) + " contains NaN or Inf");
  }
}

Dataset::Dataset(Matrix predictors, Vector response)
    : x_(std::move(predictors)), y_(std::move(response)) {
  if (x_.rows() < 2 || x_.cols() < 1) {
    throw InvalidArgument("dataset needs n >= 2 observations and p >= 1 predictors");
  }
  if (y_.size() != x_.rows()) {
    throw DimensionMismatch("response length " + std::to_string(y_.size()) +
                            " does not match " + std::to_string(x_.rows()) +
                            " predictor rows");
  }
  require_finite(x_, "predictor matrix");
  require_finite(y_, "response");
}

EigenDecomposition sym_eigen(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("sym_eigen needs a square matrix");
  require_finite(m, "matrix");
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  // Eigen returns ascending order.
  EigenDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  apply_sign_convention(out.vectors);
  return out;
}

Matrix inv_sqrt(const Matrix& m, double rel_tol) {
  const EigenDecomposition eig = sym_eigen(m);
  const double largest = eig.values(0);
  const double smallest = eig.values(eig.values.size() - 1);
  if (!(largest > 0.0) || !(smallest > rel_tol * largest)) {
    throw SingularCovariance("covariance matrix is singular or nearly so (eigenvalue range [" +
                             std::to_string(smallest) + ", " + std::to_string(largest) + "])");
  }
  const Vector scale = eig.values.array().rsqrt();
  Matrix r = eig.vectors * scale.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (r + r.transpose());
}

StandardizedData standardize(const Dataset& d) {
  StandardizedData out;
  const double n = static_cast<double>(d.n());
  out.mean = d.x().colwise().mean().transpose();
  const Matrix centered = d.x().rowwise() - out.mean.transpose();
  out.cov = (centered.transpose() * centered) / n;
  out.inv_sqrt_cov = inv_sqrt(out.cov);
  out.z = centered * out.inv_sqrt_cov;
  return out;
}

Matrix orthonormalize(const Matrix& basis) {
  require_finite(basis, "basis");
  if (basis.cols() == 0 || basis.cols() > basis.rows()) {
    throw DimensionMismatch("basis must have between 1 and p columns");
  }
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ() * Matrix::Identity(basis.rows(), basis.cols());
  apply_sign_convention(q);
  return q;
}

Matrix projection_matrix(const Matrix& basis) {
  require_finite(basis, "basis");
  if (is_orthonormal(basis)) return basis * basis.transpose();
  const Matrix q = orthonormalize(basis);
  return q * q.transpose();
}

double subspace_distance(const Matrix& basis1, const Matrix& basis2, Norm norm) {
  if (basis1.rows() != basis2.rows()) {
    throw DimensionMismatch("subspaces live in different ambient dimensions (" +
                            std::to_string(basis1.rows()) + " vs " +
                            std::to_string(basis2.rows()) + ")");
  }
  const Matrix diff = projection_matrix(basis1) - projection_matrix(basis2);
  if (norm == Norm::Frobenius) return diff.norm();
  // P1 - P2 is symmetric, so its largest singular value is its spectral radius.
  const Vector values = sym_eigen(diff).values;
  return std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
}

double subspace_distance(const SubspaceEstimate& s1, const SubspaceEstimate& s2, Norm norm) {
  return subspace_distance(s1.basis, s2.basis, norm);
}

SubspaceEstimate back_transform(const EigenDecomposition& eig, const Matrix& inv_sqrt_cov,
                                const std::vector<Eigen::Index>& columns, Method method) {
  Matrix directions(inv_sqrt_cov.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    directions.col(static_cast<Eigen::Index>(k)) = inv_sqrt_cov * eig.vectors.col(columns[k]);
  }
  return SubspaceEstimate{orthonormalize(directions), eig.values, method};
}

}  // namespace contour
