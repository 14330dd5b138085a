#pragma once

#include <vector>

#include "pcc/inner_products.hpp"
#include "pcc/pc_core.hpp"

namespace pcc {

/// n-1 linearly independent additively consistent matrices spanning the
/// consistent subspace.
class SubspaceBasis {
 public:
  // Validates count, anti-symmetry, consistency and independence.
  SubspaceBasis(Index n, std::vector<Matrix> matrices);

  Index dimension() const noexcept { return n_; }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }

 private:
  Index n_;
  std::vector<Matrix> matrices_;
};

/// Gram-Schmidt output: E_1..E_{n-1}, pairwise orthogonal under `spec`,
/// with <E_k,E_k> cached.
class OrthogonalBasis {
 public:
  Index dimension() const noexcept { return n_; }
  const ValidatedSpec& spec() const noexcept { return spec_; }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
  const std::vector<double>& squared_norms() const noexcept { return squared_norms_; }

  // True if a single reorthogonalization pass was needed.
  bool reorthogonalized() const noexcept { return reorthogonalized_; }

 private:
  friend OrthogonalBasis gram_schmidt(const SubspaceBasis&, const ValidatedSpec&);
  OrthogonalBasis(Index n, ValidatedSpec spec) : n_(n), spec_(std::move(spec)) {}

  Index n_;
  ValidatedSpec spec_;
  std::vector<Matrix> matrices_;
  std::vector<double> squared_norms_;
  bool reorthogonalized_ = false;
};

struct ProjectionResult {
  std::vector<double> coefficients;  // eps_k
  AdditiveMatrix additive_projection;
  PCMatrix multiplicative_projection;
  double residual_distance = 0.0;
  PriorityVector priority;
};

/// B_k with b_ij = 1 for i <= k < j, -1 for j <= k < i, 0 otherwise (1-based k).
SubspaceBasis canonical_basis(Index n);

/// Classical Gram-Schmidt without normalization, in basis order.
OrthogonalBasis gram_schmidt(const SubspaceBasis& basis, const ValidatedSpec& spec);

ProjectionResult project(const AdditiveMatrix& a, const OrthogonalBasis& ortho);

/// exp of the orthogonal projection of log M onto the consistent subspace.
ProjectionResult approximate(const PCMatrix& m, const ValidatedSpec& spec);

}  // namespace pcc
