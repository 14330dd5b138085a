#pragma once

#include "pcc/inner_products.hpp"
#include "pcc/pc_core.hpp"

namespace pcc {

/// Positive per-alternative weights rho; the weight grid is rho_i * rho_j.
class WeightVector {
 public:
  explicit WeightVector(Vector rho);
  static WeightVector uniform(Index n) { return WeightVector(Vector::Ones(n)); }

  const Vector& values() const noexcept { return rho_; }
  double total() const noexcept { return total_; }
  Index size() const noexcept { return rho_.size(); }

  // The weighted Frobenius inner product with grid rho_i * rho_j.
  ValidatedSpec inner_product() const;

 private:
  Vector rho_;
  double total_;
};

/// sigma_i = sum_j rho_j a_ij / |rho|. [sigma_i - sigma_j] is the orthogonal
/// projection of A under the rho-weighted Frobenius product, and
/// sum rho_i sigma_i = 0. Tagged Normalization::Raw.
PriorityVector closed_form_sigma(const AdditiveMatrix& a, const WeightVector& rho);

/// omega_i = (prod_j m_ij^rho_j)^(1/|rho|), geometric-mean-one.
PriorityVector weighted_gm_priority(const PCMatrix& m, const WeightVector& rho);

/// r_i = sum_j rho_j (a_ij - sigma_i + sigma_j) for i = 2..n, which is
/// -(1/(4 rho_i)) d f_A / d sigma_i for f_A(sigma) = sum rho_i rho_j (a_ij - sigma_i + sigma_j)^2.
Vector normal_equations_residual(const AdditiveMatrix& a, const PriorityVector& sigma, const WeightVector& rho);

/// Runs the log/project/exp pipeline twice under WeightedFrobenius(rho) and
/// reports whether the second pass moved any entry by more than `rel_tol`.
bool check_idempotence(const PCMatrix& m, const WeightVector& rho, double rel_tol = 1e-10);

/// Weighted mean of the first row: the default choice of sigma_1.
double sigma1_row_mean(const AdditiveMatrix& a, const WeightVector& rho);

}  // namespace pcc
