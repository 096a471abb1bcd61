#include "brute_force.hpp"

#include <algorithm>
#include <cmath>

namespace contour::testing {

JacobiResult jacobi_eigen(Mat a, double tol, int max_sweeps) {
  const Eigen::Index p = a.rows();
  Mat v = Mat::Identity(p, p);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index r = 0; r < p; ++r)
      for (Eigen::Index c = r + 1; c < p; ++c) off += a(r, c) * a(r, c);
    if (off <= tol * tol * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index r = 0; r < p; ++r) {
      for (Eigen::Index c = r + 1; c < p; ++c) {
        if (a(r, c) == 0.0) continue;
        const double theta = (a(c, c) - a(r, r)) / (2.0 * a(r, c));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (Eigen::Index k = 0; k < p; ++k) {
          const double akr = a(k, r), akc = a(k, c);
          a(k, r) = cs * akr - sn * akc;
          a(k, c) = sn * akr + cs * akc;
        }
        for (Eigen::Index k = 0; k < p; ++k) {
          const double ark = a(r, k), ack = a(c, k);
          a(r, k) = cs * ark - sn * ack;
          a(c, k) = sn * ark + cs * ack;
        }
        for (Eigen::Index k = 0; k < p; ++k) {
          const double vkr = v(k, r), vkc = v(k, c);
          v(k, r) = cs * vkr - sn * vkc;
          v(k, c) = sn * vkr + cs * vkc;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  for (Eigen::Index k = 0; k < p; ++k) order[static_cast<std::size_t>(k)] = k;
  std::sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) { return a(l, l) < a(r, r); });
  JacobiResult out{Vec(p), Mat(p, p)};
  for (Eigen::Index k = 0; k < p; ++k) {
    out.values[k] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

Mat bf_inv_sqrt(const Mat& cov) {
  const JacobiResult e = jacobi_eigen(cov);
  Mat d = Mat::Zero(cov.rows(), cov.cols());
  for (Eigen::Index k = 0; k < cov.rows(); ++k) d(k, k) = 1.0 / std::sqrt(e.values[k]);
  return e.vectors * d * e.vectors.transpose();
}

Mat bf_projection(const Mat& b) {
  return b * (b.transpose() * b).inverse() * b.transpose();
}

double bf_distance(const Mat& b1, const Mat& b2) {
  return (bf_projection(b1) - bf_projection(b2)).norm();
}

PairList bf_select(const std::vector<double>& scores, const PairList& pairs, const BfThreshold& t,
                   std::size_t population) {
  double cutoff = t.value;
  if (t.proportion) {
    std::vector<double> sorted(scores);
    std::sort(sorted.begin(), sorted.end());
    std::size_t k = static_cast<std::size_t>(std::ceil(t.value * static_cast<double>(population) - 1e-9));
    k = std::clamp<std::size_t>(k, 1, sorted.size());
    cutoff = sorted[k - 1];
  }
  PairList out;
  for (std::size_t s = 0; s < scores.size(); ++s)
    if (scores[s] <= cutoff) out.push_back(pairs[s]);
  return out;
}

PairList bf_scr_pairs(const Vec& y, const BfThreshold& t) {
  PairList pairs;
  std::vector<double> scores;
  for (int i = 1; i < y.size(); ++i) {
    for (int j = 0; j < i; ++j) {
      pairs.emplace_back(i, j);
      scores.push_back(std::abs(y[i] - y[j]));
    }
  }
  return bf_select(scores, pairs, t, pairs.size());
}

Mat bf_h_matrix_fixed(const Mat& x, const Vec& y, double c) {
  const Eigen::Index n = x.rows(), p = x.cols();
  Mat h = Mat::Zero(p, p);
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (!(std::abs(y[i] - y[j]) <= c)) continue;
      for (Eigen::Index a = 0; a < p; ++a)
        for (Eigen::Index b = 0; b < p; ++b) h(a, b) += (x(j, a) - x(i, a)) * (x(j, b) - x(i, b));
    }
  }
  const double total = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  for (Eigen::Index a = 0; a < p; ++a)
    for (Eigen::Index b = 0; b < p; ++b) h(a, b) /= total;
  return h;
}

namespace {

Mat sample_cov(const Mat& x) {
  const Vec mean = x.colwise().mean().transpose();
  const Mat centered = x.rowwise() - mean.transpose();
  return centered.transpose() * centered / static_cast<double>(x.rows());
}

Mat smallest(const JacobiResult& e, int q) { return e.vectors.leftCols(q); }

}  // namespace

Mat bf_scr_basis(const Mat& x, const Vec& y, int q, const BfThreshold& t) {
  const Eigen::Index p = x.cols();
  const PairList pairs = bf_scr_pairs(y, t);
  Mat h = Mat::Zero(p, p);
  for (const auto& [i, j] : pairs) {
    const Vec d = (x.row(i) - x.row(j)).transpose();
    h += d * d.transpose();
  }
  h /= static_cast<double>(x.rows()) * static_cast<double>(x.rows() - 1) / 2.0;
  const Mat s = bf_inv_sqrt(sample_cov(x));
  return s * smallest(jacobi_eigen(s * h * s), q);
}

std::vector<int> bf_tube(const Mat& z, int i, int j, double rho) {
  std::vector<int> members;
  const Vec a = z.row(i).transpose();
  const Vec d = (z.row(j) - z.row(i)).transpose();
  for (int k = 0; k < z.rows(); ++k) {
    const Vec w = z.row(k).transpose() - a;
    const double t = w.dot(d) / d.dot(d);
    if ((w - t * d).norm() <= rho) members.push_back(k);
  }
  return members;
}

double bf_tube_variance(const Mat& z, const Vec& y, int i, int j, double rho) {
  const std::vector<int> m = bf_tube(z, i, j, rho);
  double mean = 0.0;
  for (int k : m) mean += y[k];
  mean /= static_cast<double>(m.size());
  double v = 0.0;
  for (int k : m) v += (y[k] - mean) * (y[k] - mean);
  return v / static_cast<double>(m.size());
}

PairList bf_gcr_pairs(const Mat& z, const Vec& y, double rho, const BfThreshold& t) {
  PairList pairs;
  std::vector<double> scores;
  for (int i = 1; i < z.rows(); ++i) {
    for (int j = 0; j < i; ++j) {
      pairs.emplace_back(i, j);
      scores.push_back(bf_tube_variance(z, y, i, j, rho));
    }
  }
  return bf_select(scores, pairs, t, pairs.size());
}

Mat bf_whiten(const Mat& x) {
  const Vec mean = x.colwise().mean().transpose();
  return (x.rowwise() - mean.transpose()) * bf_inv_sqrt(sample_cov(x));
}

Mat bf_gcr_basis(const Mat& x, const Vec& y, int q, double rho, const BfThreshold& t) {
  const Mat z = bf_whiten(x);
  const Eigen::Index p = x.cols();
  Mat f = Mat::Zero(p, p);
  for (const auto& [i, j] : bf_gcr_pairs(z, y, rho, t)) {
    const Vec d = (z.row(i) - z.row(j)).transpose();
    f += d * d.transpose();
  }
  f /= static_cast<double>(x.rows()) * static_cast<double>(x.rows() - 1) / 2.0;
  return bf_inv_sqrt(sample_cov(x)) * smallest(jacobi_eigen(f), q);
}

double golden_line_distance(const Vec& xk, const Vec& xi, const Vec& xj) {
  auto f = [&](double t) { return (xk - ((1.0 - t) * xi + t * xj)).norm(); };
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = -1e3, hi = 1e3;
  double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
  double fa = f(a), fb = f(b);
  for (int it = 0; it < 200; ++it) {
    if (fa < fb) {
      hi = b; b = a; fb = fa;
      a = hi - g * (hi - lo); fa = f(a);
    } else {
      lo = a; a = b; fa = fb;
      b = lo + g * (hi - lo); fb = f(b);
    }
  }
  return f(0.5 * (lo + hi));
}

}  // namespace contour::testing
