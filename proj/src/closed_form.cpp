#include "pcc/closed_form.hpp"

#include <cmath>
#include <string>

#include "pcc/consistent_subspace.hpp"

namespace pcc {

namespace {

void require_size(Index n, const WeightVector& rho) {
  if (rho.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "weights have length " + std::to_string(rho.size()) + ", matrix is n = " + std::to_string(n));
  }
}

}  // namespace

WeightVector::WeightVector(Vector rho) : rho_(std::move(rho)), total_(0.0) {
  if (rho_.size() == 0) throw Error(ErrorCode::DimensionTooSmall, "empty weight vector");
  for (Index i = 0; i < rho_.size(); ++i) {
    if (!(rho_[i] > 0.0) || !std::isfinite(rho_[i])) {
      throw Error(ErrorCode::NonPositiveEntry, "rho_" + std::to_string(i + 1) + " must be positive");
    }
  }
  total_ = rho_.sum();
}

ValidatedSpec WeightVector::inner_product() const { return validate(WeightedFrobenius{rho_}); }

PriorityVector closed_form_sigma(const AdditiveMatrix& a, const WeightVector& rho) {
  require_size(a.size(), rho);
  return PriorityVector::additive(a.entries() * rho.values() / rho.total(), Normalization::Raw);
}

PriorityVector weighted_gm_priority(const PCMatrix& m, const WeightVector& rho) {
  return closed_form_sigma(log_transform(m), rho).to_multiplicative().normalized(Normalization::GeometricMeanOne);
}

Vector normal_equations_residual(const AdditiveMatrix& a, const PriorityVector& sigma, const WeightVector& rho) {
  const Index n = a.size();
  require_size(n, rho);
  if (sigma.size() != n) throw Error(ErrorCode::DimensionMismatch, "sigma length");
  const Vector s = sigma.log_weights();
  const Vector& w = rho.values();
  Vector r(n - 1);
  for (Index i = 1; i < n; ++i) {
    double acc = 0.0;
    for (Index j = 0; j < n; ++j) acc += w[j] * (a(i, j) - s[i] + s[j]);
    r[i - 1] = acc;
  }
  return r;
}

bool check_idempotence(const PCMatrix& m, const WeightVector& rho, double rel_tol) {
  require_size(m.size(), rho);
  const ValidatedSpec spec = rho.inner_product();
  const PCMatrix once = approximate(m, spec).multiplicative_projection;
  const PCMatrix twice = approximate(once, spec).multiplicative_projection;
  const Matrix& a = once.entries();
  const Matrix& b = twice.entries();
  for (Index k = 0; k < a.size(); ++k) {
    if (std::abs(a.data()[k] - b.data()[k]) > rel_tol * std::abs(a.data()[k])) return false;
  }
  return true;
}

double sigma1_row_mean(const AdditiveMatrix& a, const WeightVector& rho) {
  require_size(a.size(), rho);
  return a.entries().row(0).dot(rho.values()) / rho.total();
}

}  // namespace pcc
