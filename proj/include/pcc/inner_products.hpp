#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcc/pc_core.hpp"

namespace pcc {

// Eigenvalue floor for PSD factors and the definiteness audit, relative to
// the largest eigenvalue magnitude.
inline constexpr double kDefiniteTol = 1e-10;

/// <A,B> = sum a_ij b_ij
struct Frobenius {};

/// <A,B> = sum rho_i rho_j a_ij b_ij
struct WeightedFrobenius {
  Vector rho;
};

struct TracePair {
  Matrix x;
  Matrix y;
};

/// <A,B> = tr(sum B^T X_i A Y_i) = <sum X_i A Y_i, B>_F for symmetric PSD X_i, Y_i.
struct TraceForm {
  std::vector<TracePair> pairs;
};

/// <A,B> = vec(A)^T Gamma vec(B), vec row-major (index i*n + j), Gamma SPD n^2 x n^2.
struct CoefficientForm {
  Matrix gamma;
};

using InnerProductSpec = std::variant<Frobenius, WeightedFrobenius, TraceForm, CoefficientForm>;

/// An inner product that has passed validate(). Only validated specs can be
/// evaluated, so every form reaching Gram-Schmidt is known to be definite.
class ValidatedSpec {
 public:
  const InnerProductSpec& spec() const noexcept { return spec_; }

  // Matrix dimension the form is bound to; Frobenius works for any n.
  std::optional<Index> dimension() const noexcept { return dimension_; }

  // "frobenius" | "weighted" | "trace_form" | "coefficient"
  std::string kind() const;

  bool accepts(Index n) const noexcept { return !dimension_ || *dimension_ == n; }

 private:
  friend ValidatedSpec validate(InnerProductSpec spec);
  ValidatedSpec(InnerProductSpec spec, std::optional<Index> dimension)
      : spec_(std::move(spec)), dimension_(dimension) {}

  InnerProductSpec spec_;
  std::optional<Index> dimension_;
};

/// Checks symmetry and semi-definiteness of every parameter matrix, then
/// audits that the induced form is positive definite: full n^2 x n^2 Gram
/// matrix for n <= 6, unit matrices plus a seeded random probe set above.
/// Throws NotSymmetric, NotPSD, FormNotDefinite, DimensionMismatch.
ValidatedSpec validate(InnerProductSpec spec);

double evaluate(const ValidatedSpec& spec, const Matrix& a, const Matrix& b);

/// Riesz representer: the matrix R(A) with <A,B> = <R(A),B>_F. For a trace
/// form this is sum X_i A Y_i.
Matrix apply_operator(const ValidatedSpec& spec, const Matrix& a);

double norm(const ValidatedSpec& spec, const Matrix& a);
double distance(const ValidatedSpec& spec, const Matrix& a, const Matrix& b);

}  // namespace pcc
