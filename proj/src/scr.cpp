#include "contour/scr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contour/errors.hpp"
#include "contour/simd/kernels.hpp"

namespace contour {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

ThresholdSpec ThresholdSpec::fixed(double c) {
  if (!(c > 0.0)) throw InvalidArgument("fixed threshold c must be positive");
  return ThresholdSpec(Mode::FixedC, c);
}

ThresholdSpec ThresholdSpec::proportion(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("proportion r must lie in (0, 1]");
  return ThresholdSpec(Mode::Proportion, r);
}

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

void require_structural_dimension(int q, Eigen::Index p) {
  if (q < 1 || q >= p) {
    throw InvalidArgument("structural dimension q=" + std::to_string(q) +
                          " must satisfy 1 <= q < p=" + std::to_string(p));
  }
}

PairSelection threshold_pairs(const std::vector<double>& scores,
                              const std::vector<std::pair<std::uint32_t, std::uint32_t>>& candidates,
                              const ThresholdSpec& spec, std::size_t population, std::size_t n) {
  PairSelection out;
  if (scores.empty()) throw EmptySelection("no candidate pairs to threshold");
  double cutoff = spec.value();
  if (spec.mode() == ThresholdSpec::Mode::Proportion) {
    // The small slack keeps r = k / population from rounding up to k + 1.
    const double wanted = std::ceil(spec.value() * static_cast<double>(population) - 1e-9);
    std::size_t k = static_cast<std::size_t>(std::max(1.0, wanted));
    k = std::min(k, scores.size());
    std::vector<double> work(scores);
    std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k - 1), work.end());
    cutoff = work[k - 1];
  }
  if (candidates.empty()) {
    // Scores cover the full index set in order.
    std::uint32_t i = 1;
    std::uint32_t j = 0;
    for (std::size_t t = 0; t < scores.size(); ++t) {
      if (scores[t] <= cutoff) out.pairs.emplace_back(i, j);
      if (++j == i) {
        ++i;
        j = 0;
      }
    }
  } else {
    for (std::size_t t = 0; t < scores.size(); ++t) {
      if (scores[t] <= cutoff) out.pairs.push_back(candidates[t]);
    }
  }
  if (out.pairs.empty()) {
    throw EmptySelection("no pair satisfies the threshold c=" + std::to_string(cutoff));
  }
  out.effective_c = cutoff;
  out.fraction = static_cast<double>(out.pairs.size()) / static_cast<double>(pair_count(n));
  return out;
}

PairSelection select_pairs_scr(const Vector& y, const ThresholdSpec& spec) {
  const std::size_t n = static_cast<std::size_t>(y.size());
  if (n < 2) throw InvalidArgument("pair selection needs at least two observations");
  require_finite(y, "response");
  const auto& kernels = simd::active_kernels();
  const std::size_t total = pair_count(n);
  std::vector<double> scores(total);
  std::size_t offset = 0;
  for (std::size_t i = 1; i < n; ++i) {
    kernels.abs_differences(y.data(), y[static_cast<Eigen::Index>(i)], i, scores.data() + offset);
    offset += i;
  }
  return threshold_pairs(scores, {}, spec, total, n);
}

Matrix h_matrix(const Matrix& x, const PairSelection& selection) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
  const std::size_t p = static_cast<std::size_t>(x.cols());
  const RowMajorMatrix rows = x;
  RowMajorMatrix acc = RowMajorMatrix::Zero(x.cols(), x.cols());
  std::vector<double> diff(p);
  const auto& kernels = simd::active_kernels();
  for (const auto& [i, j] : selection.pairs) {
    if (i >= n || j >= n) throw InvalidArgument("pair index out of range");
    const double* xi = rows.data() + static_cast<std::size_t>(i) * p;
    const double* xj = rows.data() + static_cast<std::size_t>(j) * p;
    for (std::size_t c = 0; c < p; ++c) diff[c] = xj[c] - xi[c];
    kernels.accumulate_outer(acc.data(), diff.data(), p);
  }
  return Matrix(acc / static_cast<double>(pair_count(n)));
}

namespace {

struct ScrPieces {
  StandardizedData standardized;
  PairSelection selection;
  Matrix kernel;  // S H S on the whitened scale
};

ScrPieces scr_pieces(const Dataset& d, const ThresholdSpec& spec) {
  ScrPieces out;
  out.standardized = standardize(d);
  out.selection = select_pairs_scr(d.y(), spec);
  const Matrix h = h_matrix(d.x(), out.selection);
  const Matrix& s = out.standardized.inv_sqrt_cov;
  out.kernel = s * h * s;
  return out;
}

}  // namespace

SubspaceEstimate scr_fit(const Dataset& d, int q, const ThresholdSpec& spec) {
  require_structural_dimension(q, d.p());
  const ScrPieces pieces = scr_pieces(d, spec);
  const EigenDecomposition eig = sym_eigen(pieces.kernel);
  std::vector<Eigen::Index> trailing;
  for (Eigen::Index c = d.p() - q; c < d.p(); ++c) trailing.push_back(c);
  return back_transform(eig, pieces.standardized.inv_sqrt_cov, trailing, Method::SCR);
}

Matrix scr_test_matrix(const Dataset& d, const ThresholdSpec& spec) {
  if (d.p() < 2) throw InvalidArgument("the contour diagnostic needs p >= 2");
  const ScrPieces pieces = scr_pieces(d, spec);
  const Matrix k = pieces.kernel / pieces.selection.fraction;
  Matrix out = 2.0 * Matrix::Identity(d.p(), d.p()) - k;
  return 0.5 * (out + out.transpose());
}

}  // namespace contour
