#pragma once

// Dense symmetric linear algebra shared by every estimator: the data
// containers, whitening, projections and the subspace distance.

#include <Eigen/Dense>

#include <cstddef>
#include <string_view>
#include <vector>

namespace contour {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Method { SCR, GCR, OLS, SIR, SAVE, PHD };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

enum class Norm { Spectral, Frobenius };

std::string_view to_string(Norm n);
Norm norm_from_string(std::string_view name);

/// An n x p predictor matrix (rows are observations) and its response.
/// Construction validates the shape and rejects non-finite entries.
class Dataset {
 public:
  Dataset(Matrix predictors, Vector response);

  const Matrix& x() const noexcept { return x_; }
  const Vector& y() const noexcept { return y_; }
  Eigen::Index n() const noexcept { return x_.rows(); }
  Eigen::Index p() const noexcept { return x_.cols(); }

 private:
  Matrix x_;
  Vector y_;
};

/// Whitened predictors z_i = inv_sqrt_cov * (x_i - mean). `cov` uses the 1/n
/// divisor.
struct StandardizedData {
  Matrix z;
  Vector mean;
  Matrix cov;
  Matrix inv_sqrt_cov;
};

/// Eigenpairs of a symmetric matrix, values descending. Column i of
/// `vectors` pairs with values(i); its first entry with magnitude above
/// 1e-12 is positive.
struct EigenDecomposition {
  Vector values;
  Matrix vectors;
};

/// Orthonormal p x q basis of an estimated central subspace, plus the full
/// descending spectrum of the kernel matrix that produced it.
struct SubspaceEstimate {
  Matrix basis;
  Vector eigenvalues;
  Method method = Method::SCR;

  Eigen::Index dim() const noexcept { return basis.cols(); }
  Eigen::Index ambient_dim() const noexcept { return basis.rows(); }
};

void require_finite(const Matrix& m, std::string_view what);

EigenDecomposition sym_eigen(const Matrix& m);

/// Symmetric inverse square root of an SPD matrix. Throws SingularCovariance
/// when the smallest eigenvalue is not above rel_tol times the largest.
Matrix inv_sqrt(const Matrix& m, double rel_tol = 1e-10);

StandardizedData standardize(const Dataset& d);

/// Thin orthonormal basis for the column span of `basis`, with the same
/// sign convention as sym_eigen.
Matrix orthonormalize(const Matrix& basis);

Matrix projection_matrix(const Matrix& basis);

double subspace_distance(const Matrix& basis1, const Matrix& basis2, Norm norm);
double subspace_distance(const SubspaceEstimate& s1, const SubspaceEstimate& s2,
                         Norm norm);

/// Estimate built from the eigenvectors of `kernel` picked by `columns`,
/// mapped back to the predictor scale through `inv_sqrt_cov`.
SubspaceEstimate back_transform(const EigenDecomposition& eig, const Matrix& inv_sqrt_cov,
                                const std::vector<Eigen::Index>& columns, Method method);

}  // namespace contour
