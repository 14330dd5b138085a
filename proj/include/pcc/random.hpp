#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "pcc/closed_form.hpp"
#include "pcc/pc_core.hpp"

namespace pcc {

// Default half-width of ln(omega): weights span [1/9, 9].
inline const double kDefaultLogSpread = std::log(9.0);

/// Seeded source of random test instances. Deviates come straight from
/// mt19937_64 bits, so a seed reproduces the same matrices on every
/// standard library.
class MatrixGenerator {
 public:
  explicit MatrixGenerator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  Index uniform_int(Index lo, Index hi);  // inclusive

  /// [s_i - s_j] with s_i uniform in [-spread, spread].
  AdditiveMatrix consistent_additive(Index n, double spread = kDefaultLogSpread);

  /// Consistent matrix plus delta_ij uniform in [-noise, noise] on i < j,
  /// mirrored; noise 0 gives a consistent matrix.
  AdditiveMatrix noisy_additive(Index n, double noise, double spread = kDefaultLogSpread);
  PCMatrix noisy_pc(Index n, double noise, double spread = kDefaultLogSpread);

  /// Anti-symmetric matrix with independent entries uniform in [-scale, scale].
  AdditiveMatrix antisymmetric(Index n, double scale);

  WeightVector weights(Index n, double lo = 0.25, double hi = 4.0);
  Vector positive_vector(Index n, double lo, double hi);

 private:
  std::mt19937_64 rng_;
};

/// The `generate` subcommand: noisy_pc from a fresh generator.
PCMatrix generate_pc_matrix(Index n, double noise, std::uint64_t seed, double spread = kDefaultLogSpread);

}  // namespace pcc
