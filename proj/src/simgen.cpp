#include "contour/simgen.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "contour/errors.hpp"
#include "contour/parallel.hpp"
#include "contour/rng.hpp"

namespace contour {

namespace {

constexpr std::size_t kMinOraclePairs = 100000;
constexpr std::size_t kMinAccepted = 1000;

struct NamedModel {
  ModelId id;
  std::string_view name;
};

constexpr std::array<NamedModel, 9> kModels{{
    {ModelId::Ex6_1, "ex6_1"},
    {ModelId::Ex6_2, "ex6_2"},
    {ModelId::Ex6_3, "ex6_3"},
    {ModelId::Ex6_4_cos_cube, "ex6_4_cos_cube"},
    {ModelId::Ex6_4_quad_p10, "ex6_4_quad_p10"},
    {ModelId::Ex6_5, "ex6_5"},
    {ModelId::Ex2_1, "ex2_1"},
    {ModelId::Ex2_2, "ex2_2"},
    {ModelId::Ex2_3, "ex2_3"},
}};

double mean_function(ModelId id, const double* x) {
  switch (id) {
    case ModelId::Ex6_1:
    case ModelId::Ex6_4_quad_p10:
      return x[0] * x[0] + x[1];
    case ModelId::Ex6_2: {
      const double shifted = x[1] + 1.5;
      return x[0] / (0.5 + shifted * shifted) + (1.0 + x[1]) * (1.0 + x[1]);
    }
    case ModelId::Ex6_3: {
      const double s = std::sin(std::numbers::pi * x[1] + 1.0);
      return s * s;
    }
    case ModelId::Ex6_4_cos_cube:
      return std::cos(1.5 * x[0]) + x[1] * x[1] * x[1] / 2.0;
    case ModelId::Ex2_1:
      return x[1] * x[1];
    case ModelId::Ex2_2: {
      const double s = x[1] - 1.0;
      return s * s * s;
    }
    case ModelId::Ex6_5:
    case ModelId::Ex2_3:
      break;
  }
  return 0.0;
}

bool in_cut_cube(const double* x, int p) {
  for (int c = 0; c < p; ++c) {
    if (x[c] > 0.7) return true;
  }
  return false;
}

template <class Accumulator, class Sample>
Accumulator run_chunks(std::size_t total, std::uint64_t seed, unsigned workers, Sample&& sample) {
  const std::size_t chunks = (total + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<Accumulator> partial(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    Rng rng(derive_seed(seed, {c}));
    const std::size_t begin = c * kMonteCarloChunk;
    const std::size_t end = std::min(total, begin + kMonteCarloChunk);
    for (std::size_t s = begin; s < end; ++s) sample(rng, partial[c]);
  });
  Accumulator out{};
  for (const Accumulator& a : partial) out += a;
  return out;
}

struct MomentSums {
  std::size_t accepted = 0;
  double s11 = 0.0;
  double s12 = 0.0;
  double s22 = 0.0;

  MomentSums& operator+=(const MomentSums& o) {
    accepted += o.accepted;
    s11 += o.s11;
    s12 += o.s12;
    s22 += o.s22;
    return *this;
  }
};

void require_oracle_pairs(std::size_t pairs) {
  if (pairs < kMinOraclePairs) {
    throw InvalidArgument("oracle needs at least " + std::to_string(kMinOraclePairs) + " pairs");
  }
}

void require_accepted(std::size_t accepted) {
  if (accepted < kMinAccepted) {
    throw DegenerateConditioning("only " + std::to_string(accepted) +
                                 " simulated pairs satisfied the conditioning event");
  }
}

}  // namespace

std::string_view to_string(ModelId id) {
  for (const auto& m : kModels) {
    if (m.id == id) return m.name;
  }
  return "?";
}

ModelId model_from_string(std::string_view name) {
  for (const auto& m : kModels) {
    if (m.name == name) return m.id;
  }
  throw InvalidArgument("unknown model '" + std::string(name) + "'");
}

int predictor_dimension(ModelId id) {
  switch (id) {
    case ModelId::Ex6_1:
    case ModelId::Ex6_2:
    case ModelId::Ex6_3:
      return 4;
    case ModelId::Ex6_4_cos_cube:
    case ModelId::Ex6_4_quad_p10:
    case ModelId::Ex6_5:
      return 10;
    case ModelId::Ex2_1:
    case ModelId::Ex2_2:
    case ModelId::Ex2_3:
      return 2;
  }
  return 0;
}

int structural_dimension(ModelId id) {
  switch (id) {
    case ModelId::Ex6_1:
    case ModelId::Ex6_2:
    case ModelId::Ex6_4_cos_cube:
    case ModelId::Ex6_4_quad_p10:
      return 2;
    default:
      return 1;
  }
}

Matrix true_basis(ModelId id) {
  const int p = predictor_dimension(id);
  Matrix b = Matrix::Zero(p, structural_dimension(id));
  switch (id) {
    case ModelId::Ex6_1:
    case ModelId::Ex6_2:
    case ModelId::Ex6_4_cos_cube:
    case ModelId::Ex6_4_quad_p10:
      b(0, 0) = 1.0;
      b(1, 1) = 1.0;
      break;
    case ModelId::Ex6_5:
      b(0, 0) = 1.0;
      break;
    case ModelId::Ex6_3:
    case ModelId::Ex2_1:
    case ModelId::Ex2_2:
    case ModelId::Ex2_3:
      b(1, 0) = 1.0;
      break;
  }
  return b;
}

StreamSeeds split_streams(std::uint64_t seed) {
  return StreamSeeds{derive_seed(seed, {1}), derive_seed(seed, {2})};
}

LabeledDataset generate(const ModelSpec& spec) { return generate(spec, split_streams(spec.seed)); }

LabeledDataset generate(const ModelSpec& spec, StreamSeeds streams) {
  if (spec.n < 2) throw InvalidArgument("generated datasets need n >= 2");
  if (!std::isfinite(spec.sigma_or_a)) throw InvalidArgument("sigma_or_a must be finite");
  if (spec.id != ModelId::Ex2_3 && spec.sigma_or_a < 0.0) {
    throw InvalidArgument(spec.id == ModelId::Ex6_5 ? "a must be non-negative"
                                                    : "sigma must be non-negative");
  }
  const int p = predictor_dimension(spec.id);
  const auto n = static_cast<Eigen::Index>(spec.n);
  Rng xs(streams.predictors);
  Rng noise(streams.noise);
  Matrix x(n, p);
  Vector y(n);
  std::vector<double> row(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < n; ++i) {
    switch (spec.id) {
      case ModelId::Ex6_3:
        do {
          for (double& v : row) v = xs.uniform();
        } while (!in_cut_cube(row.data(), p));
        break;
      case ModelId::Ex2_3: {
        const double label = xs.uniform() < 0.5 ? 0.0 : 1.0;
        row[0] = xs.normal();
        row[1] = (2.0 * label - 1.0) + xs.normal();
        y[i] = label;
        break;
      }
      default:
        for (double& v : row) v = xs.normal();
        break;
    }
    for (int c = 0; c < p; ++c) x(i, c) = row[static_cast<std::size_t>(c)];
    if (spec.id == ModelId::Ex2_3) continue;
    const double e = noise.normal();
    if (spec.id == ModelId::Ex6_5) {
      const double shifted = row[0] - spec.sigma_or_a;
      y[i] = 0.5 * shifted * shifted * e;
    } else {
      y[i] = mean_function(spec.id, row.data()) + spec.sigma_or_a * e;
    }
  }
  return LabeledDataset{Dataset(std::move(x), std::move(y)), true_basis(spec.id),
                        structural_dimension(spec.id)};
}

LambdaPair oracle_lambda(ModelId model, double c, double sigma, std::size_t pairs,
                         std::uint64_t seed, unsigned workers) {
  if (model != ModelId::Ex2_1 && model != ModelId::Ex2_2) {
    throw InvalidArgument("oracle_lambda supports ex2_1 and ex2_2 only");
  }
  if (!(c >= 0.0) || !(sigma >= 0.0)) throw InvalidArgument("c and sigma must be non-negative");
  require_oracle_pairs(pairs);
  const auto sums = run_chunks<MomentSums>(pairs, seed, workers, [&](Rng& rng, MomentSums& acc) {
    const double x[2] = {rng.normal(), rng.normal()};
    const double xt[2] = {rng.normal(), rng.normal()};
    const double y = mean_function(model, x) + sigma * rng.normal();
    const double yt = mean_function(model, xt) + sigma * rng.normal();
    if (std::abs(yt - y) <= c) {
      const double d1 = xt[0] - x[0];
      const double d2 = xt[1] - x[1];
      acc.accepted += 1;
      acc.s11 += d1 * d1;
      acc.s12 += d1 * d2;
      acc.s22 += d2 * d2;
    }
  });
  require_accepted(sums.accepted);
  const double m = static_cast<double>(sums.accepted);
  return LambdaPair{sums.s11 / m, sums.s22 / m, sums.accepted};
}

Matrix oracle_binary_k(double c, std::size_t pairs, std::uint64_t seed, OracleScale scale,
                       unsigned workers) {
  if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("c must lie in [0, 1] for a binary response");
  require_oracle_pairs(pairs);
  const auto sums = run_chunks<MomentSums>(pairs, seed, workers, [&](Rng& rng, MomentSums& acc) {
    const double y = rng.uniform() < 0.5 ? 0.0 : 1.0;
    const double yt = rng.uniform() < 0.5 ? 0.0 : 1.0;
    const double x1 = rng.normal();
    const double x2 = (2.0 * y - 1.0) + rng.normal();
    const double xt1 = rng.normal();
    const double xt2 = (2.0 * yt - 1.0) + rng.normal();
    if (std::abs(yt - y) <= c) {
      const double d1 = xt1 - x1;
      const double d2 = xt2 - x2;
      acc.accepted += 1;
      acc.s11 += d1 * d1;
      acc.s12 += d1 * d2;
      acc.s22 += d2 * d2;
    }
  });
  require_accepted(sums.accepted);
  const double m = static_cast<double>(sums.accepted);
  Matrix k(2, 2);
  k << sums.s11 / m, sums.s12 / m, sums.s12 / m, sums.s22 / m;
  if (scale == OracleScale::Standardized) {
    // var(X) = diag(1, 2) for this design.
    const Vector inv_sd = Vector(Eigen::Vector2d(1.0, 1.0 / std::sqrt(2.0)));
    k = inv_sd.asDiagonal() * k * inv_sd.asDiagonal();
  }
  return k;
}

}  // namespace contour
