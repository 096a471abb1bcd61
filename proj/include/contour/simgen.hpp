#pragma once

// Seeded generators for the simulation designs, and Monte-Carlo versions of
// the population quantities used to check the contour assumption.

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "contour/linalg.hpp"

namespace contour {

enum class ModelId {
  Ex6_1,           // Y = X1^2 + X2 + s e, X ~ N(0, I_4)
  Ex6_2,           // Y = X1 / (0.5 + (X2 + 1.5)^2) + (1 + X2)^2 + s e, X ~ N(0, I_4)
  Ex6_3,           // Y = sin^2(pi X2 + 1) + s e, X uniform on the unit 4-cube minus a corner
  Ex6_4_cos_cube,  // Y = cos(3 X1 / 2) + X2^3 / 2 + s e, X ~ N(0, I_10)
  Ex6_4_quad_p10,  // Y = X1^2 + X2 + s e, X ~ N(0, I_10)
  Ex6_5,           // Y = (X1 - a)^2 e / 2, X ~ N(0, I_10)
  Ex2_1,           // Y = X2^2 + s e, X ~ N(0, I_2)
  Ex2_2,           // Y = (X2 - 1)^3 + s e, X ~ N(0, I_2)
  Ex2_3,           // Y ~ Bernoulli(1/2), X | Y ~ N((0, 2Y - 1), I_2)
};

std::string_view to_string(ModelId id);
ModelId model_from_string(std::string_view name);

int predictor_dimension(ModelId id);
int structural_dimension(ModelId id);

/// `sigma_or_a` is the noise scale, or the centre a for Ex6_5.
struct ModelSpec {
  ModelId id = ModelId::Ex6_1;
  double sigma_or_a = 0.1;
  std::size_t n = 100;
  std::uint64_t seed = 0;
};

/// Independent streams for predictors and noise. Reusing `predictors` while
/// sweeping sigma keeps the same X realisation.
struct StreamSeeds {
  std::uint64_t predictors;
  std::uint64_t noise;
};

StreamSeeds split_streams(std::uint64_t seed);

struct LabeledDataset {
  Dataset data;
  Matrix true_basis;
  int q;
};

LabeledDataset generate(const ModelSpec& spec);
LabeledDataset generate(const ModelSpec& spec, StreamSeeds streams);

/// Orthonormal basis of the true central subspace on the raw predictor scale.
Matrix true_basis(ModelId id);

struct LambdaPair {
  double lambda1;  // E[(X~1 - X1)^2 | |Y~ - Y| <= c]
  double lambda2;  // E[(X~2 - X2)^2 | |Y~ - Y| <= c]
  std::size_t accepted;
};

/// Conditional second moments of the coordinate differences for Ex2_1 or
/// Ex2_2, estimated from `pairs` simulated independent pairs.
LambdaPair oracle_lambda(ModelId model, double c, double sigma, std::size_t pairs,
                         std::uint64_t seed, unsigned workers = 1);

enum class OracleScale { Standardized, Raw };

/// E[(X~ - X)(X~ - X)^T | |Y~ - Y| <= c] for Ex2_3, on the standardized
/// scale (Sigma = diag(1, 2)) or the raw one.
Matrix oracle_binary_k(double c, std::size_t pairs, std::uint64_t seed,
                       OracleScale scale = OracleScale::Standardized, unsigned workers = 1);

}  // namespace contour
