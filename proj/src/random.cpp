#include "pcc/random.hpp"

#include <string>

namespace pcc {

double MatrixGenerator::uniform(double lo, double hi) {
  // 53 random mantissa bits -> [0, 1)
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Index MatrixGenerator::uniform_int(Index lo, Index hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<Index>(rng_() % span);
}

AdditiveMatrix MatrixGenerator::consistent_additive(Index n, double spread) {
  return noisy_additive(n, 0.0, spread);
}

AdditiveMatrix MatrixGenerator::noisy_additive(Index n, double noise, double spread) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "n = " + std::to_string(n));
  if (!(noise >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise must be >= 0");
  Vector s(n);
  for (Index i = 0; i < n; ++i) s[i] = uniform(-spread, spread);
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double delta = noise > 0.0 ? uniform(-noise, noise) : 0.0;
      a(i, j) = s[i] - s[j] + delta;
      a(j, i) = -a(i, j);
    }
  }
  return AdditiveMatrix(std::move(a));
}

PCMatrix MatrixGenerator::noisy_pc(Index n, double noise, double spread) {
  return exp_transform(noisy_additive(n, noise, spread));
}

AdditiveMatrix MatrixGenerator::antisymmetric(Index n, double scale) {
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      a(i, j) = uniform(-scale, scale);
      a(j, i) = -a(i, j);
    }
  }
  return AdditiveMatrix(std::move(a));
}

WeightVector MatrixGenerator::weights(Index n, double lo, double hi) { return WeightVector(positive_vector(n, lo, hi)); }

Vector MatrixGenerator::positive_vector(Index n, double lo, double hi) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

PCMatrix generate_pc_matrix(Index n, double noise, std::uint64_t seed, double spread) {
  MatrixGenerator gen(seed);
  return gen.noisy_pc(n, noise, spread);
}

}  // namespace pcc
