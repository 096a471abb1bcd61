#include "contour/gcr.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "contour/errors.hpp"
#include "contour/parallel.hpp"
#include "contour/rng.hpp"
#include "contour/simd/kernels.hpp"

namespace contour {

namespace {

constexpr double kCoincidentSq = 1e-24;  // |x_j - x_i| <= 1e-12

void require_rho(double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("tube radius rho must be positive");
}

// Squared-distance matrix of the rows of z; column i holds |z_k - z_i|^2.
Matrix squared_distance_matrix(const Matrix& z) {
  const auto n = static_cast<std::size_t>(z.rows());
  Matrix d2(z.rows(), z.rows());
  const auto& kernels = simd::active_kernels();
  for (std::size_t i = 0; i < n; ++i) {
    kernels.squared_distances(z.data(), n, static_cast<std::size_t>(z.cols()), i,
                              d2.col(static_cast<Eigen::Index>(i)).data());
  }
  return d2;
}

TubeStats variance_over(const Vector& y, const std::uint32_t* members, std::size_t count) {
  double sum = 0.0;
  for (std::size_t t = 0; t < count; ++t) sum += y[members[t]];
  const double mean = sum / static_cast<double>(count);
  double ss = 0.0;
  for (std::size_t t = 0; t < count; ++t) {
    const double e = y[members[t]] - mean;
    ss += e * e;
  }
  return TubeStats{count, mean, ss / static_cast<double>(count)};
}

// Sorted linear indices (into the index-set order) of the pairs to score.
std::vector<std::size_t> subsample_pairs(std::size_t total, const TubeConfig& cfg) {
  std::vector<std::size_t> picked;
  std::mt19937_64 engine(cfg.subsample_seed);
  // Selection sampling (Knuth's algorithm S): ordered output.
  std::size_t needed = cfg.pair_subsample;
  for (std::size_t t = 0; t < total && needed > 0; ++t) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    if (u * static_cast<double>(total - t) < static_cast<double>(needed)) {
      picked.push_back(t);
      --needed;
    }
  }
  return picked;
}

struct GcrPieces {
  StandardizedData standardized;
  PairSelection selection;
};

GcrPieces gcr_pieces(const Dataset& d, const TubeConfig& cfg) {
  GcrPieces out;
  out.standardized = standardize(d);
  out.selection = select_pairs_gcr(out.standardized.z, d.y(), cfg);
  return out;
}

}  // namespace

double point_line_distance(const Eigen::Ref<const Vector>& x_k, const Eigen::Ref<const Vector>& x_i,
                           const Eigen::Ref<const Vector>& x_j) {
  if (x_k.size() != x_i.size() || x_i.size() != x_j.size()) {
    throw DimensionMismatch("point_line_distance needs points of equal dimension");
  }
  const Vector dir = x_j - x_i;
  const double dd = dir.squaredNorm();
  if (!(dd > kCoincidentSq)) {
    throw DegeneratePair("the two points defining the line coincide");
  }
  // Norm of the residual after projection; the closed form
  // sqrt(|a|^2 - (a.d)^2 / |d|^2) loses half the digits near the line.
  const Vector a = x_k - x_i;
  const Vector residual = a - (a.dot(dir) / dd) * dir;
  return std::sqrt(std::max(0.0, residual.squaredNorm()));
}

std::vector<Eigen::Index> tube_members(const Matrix& z, Eigen::Index i, Eigen::Index j,
                                       double rho) {
  require_rho(rho);
  if (i == j || i < 0 || j < 0 || i >= z.rows() || j >= z.rows()) {
    throw InvalidArgument("tube needs two distinct row indices in range");
  }
  const auto n = static_cast<std::size_t>(z.rows());
  const auto& kernels = simd::active_kernels();
  Vector d_i(z.rows());
  Vector d_j(z.rows());
  kernels.squared_distances(z.data(), n, static_cast<std::size_t>(z.cols()),
                            static_cast<std::size_t>(i), d_i.data());
  kernels.squared_distances(z.data(), n, static_cast<std::size_t>(z.cols()),
                            static_cast<std::size_t>(j), d_j.data());
  const double dd = d_i[j];
  if (!(dd > kCoincidentSq)) throw DegeneratePair("rows " + std::to_string(i) + " and " +
                                                  std::to_string(j) + " coincide");
  std::vector<std::uint32_t> members(n);
  const std::size_t count =
      kernels.tube_members(d_i.data(), d_j.data(), n, dd, rho * rho, members.data());
  return std::vector<Eigen::Index>(members.begin(),
                                   members.begin() + static_cast<std::ptrdiff_t>(count));
}

TubeStats tube_stats(const Matrix& z, const Vector& y, Eigen::Index i, Eigen::Index j,
                     const TubeConfig& cfg) {
  if (y.size() != z.rows()) throw DimensionMismatch("response length differs from row count");
  const std::vector<Eigen::Index> members = tube_members(z, i, j, cfg.rho);
  std::vector<std::uint32_t> idx(members.begin(), members.end());
  return variance_over(y, idx.data(), idx.size());
}

PairSelection select_pairs_gcr(const Matrix& z, const Vector& y, const TubeConfig& cfg) {
  require_rho(cfg.rho);
  if (y.size() != z.rows()) throw DimensionMismatch("response length differs from row count");
  if (z.rows() < 2) throw InvalidArgument("pair selection needs at least two observations");
  require_finite(z, "predictor matrix");
  require_finite(y, "response");

  const auto n = static_cast<std::size_t>(z.rows());
  const std::size_t total = pair_count(n);
  const bool subsampled = cfg.pair_subsample > 0 && cfg.pair_subsample < total;
  const std::vector<std::size_t> picked =
      subsampled ? subsample_pairs(total, cfg) : std::vector<std::size_t>{};

  const Matrix d2 = squared_distance_matrix(z);
  const auto& kernels = simd::active_kernels();
  const double rho2 = cfg.rho * cfg.rho;
  std::vector<std::uint32_t> members(n);
  std::vector<double> scores;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates;
  scores.reserve(subsampled ? picked.size() : total);
  candidates.reserve(scores.capacity());
  std::size_t skipped = 0;
  std::size_t linear = 0;
  std::size_t next_pick = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double* d_i = d2.col(static_cast<Eigen::Index>(i)).data();
    for (std::size_t j = 0; j < i; ++j, ++linear) {
      if (subsampled) {
        if (next_pick == picked.size() || picked[next_pick] != linear) continue;
        ++next_pick;
      }
      const double dd = d_i[j];
      if (!(dd > kCoincidentSq)) {
        ++skipped;
        continue;
      }
      const double* d_j = d2.col(static_cast<Eigen::Index>(j)).data();
      const std::size_t count = kernels.tube_members(d_i, d_j, n, dd, rho2, members.data());
      scores.push_back(variance_over(y, members.data(), count).variance_y);
      candidates.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  const std::size_t population = subsampled ? picked.size() : total;
  PairSelection out = threshold_pairs(scores, candidates, cfg.threshold, population, n);
  out.skipped_pairs = skipped;
  return out;
}

SubspaceEstimate gcr_fit(const Dataset& d, int q, const TubeConfig& cfg) {
  require_structural_dimension(q, d.p());
  const GcrPieces pieces = gcr_pieces(d, cfg);
  const Matrix f = h_matrix(pieces.standardized.z, pieces.selection);
  const EigenDecomposition eig = sym_eigen(f);
  std::vector<Eigen::Index> trailing;
  for (Eigen::Index c = d.p() - q; c < d.p(); ++c) trailing.push_back(c);
  return back_transform(eig, pieces.standardized.inv_sqrt_cov, trailing, Method::GCR);
}

Matrix gcr_g_matrix(const Dataset& d, const TubeConfig& cfg) {
  if (d.p() < 2) throw InvalidArgument("the contour diagnostic needs p >= 2");
  const GcrPieces pieces = gcr_pieces(d, cfg);
  const double total = static_cast<double>(pair_count(static_cast<std::size_t>(d.n())));
  const Matrix g = h_matrix(pieces.standardized.z, pieces.selection) * total /
                   static_cast<double>(pieces.selection.pairs.size());
  Matrix out = 2.0 * Matrix::Identity(d.p(), d.p()) - g;
  return 0.5 * (out + out.transpose());
}

double tube_capture_probability(int p, double rho, std::size_t samples, std::uint64_t seed,
                                unsigned workers) {
  if (p < 2) throw InvalidArgument("tube capture needs p >= 2");
  require_rho(rho);
  if (samples < 10000) throw InvalidArgument("tube capture needs at least 10000 samples");
  const std::size_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<std::size_t> hits(chunks, 0);
  parallel_for(chunks, workers, [&](std::size_t c) {
    Rng rng(derive_seed(seed, {c}));
    Vector a(p);
    Vector b(p);
    Vector k(p);
    const std::size_t begin = c * kMonteCarloChunk;
    const std::size_t end = std::min(samples, begin + kMonteCarloChunk);
    for (std::size_t s = begin; s < end; ++s) {
      for (int t = 0; t < p; ++t) a[t] = rng.normal();
      for (int t = 0; t < p; ++t) b[t] = rng.normal();
      for (int t = 0; t < p; ++t) k[t] = rng.normal();
      if (point_line_distance(k, a, b) <= rho) ++hits[c];
    }
  });
  std::size_t total = 0;
  for (std::size_t h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(samples);
}

}  // namespace contour
