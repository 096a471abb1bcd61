#pragma once

// Seeded random streams. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; uniforms and normals are derived
// here rather than through <random> distributions, whose algorithms vary
// between standard libraries.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace contour {

/// Child seed for `path` under `master`, by chained splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal, Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace contour
