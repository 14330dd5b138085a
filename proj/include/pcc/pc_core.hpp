#pragma once

#include <Eigen/Dense>

#include <vector>

#include "pcc/error.hpp"

namespace pcc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// |ln(m_ij * m_ji)| allowed before a matrix stops counting as reciprocal.
inline constexpr double kReciprocityTol = 1e-9;
// |a_ik + a_kj - a_ij| allowed per triad in the log domain.
inline constexpr double kConsistencyTol = 1e-9;

/// Positive reciprocal matrix of ratio judgments. Construction validates
/// positivity, squareness, n >= 2 and reciprocity within kReciprocityTol;
/// use make_reciprocal() to repair raw data first.
class PCMatrix {
 public:
  explicit PCMatrix(Matrix entries);

  Index size() const noexcept { return entries_.rows(); }
  const Matrix& entries() const noexcept { return entries_; }
  double operator()(Index i, Index j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

/// Anti-symmetric matrix of log-ratios. The constructor accepts drift up to
/// kReciprocityTol and then averages it away, so a_ij == -a_ji holds exactly.
class AdditiveMatrix {
 public:
  explicit AdditiveMatrix(Matrix entries);

  Index size() const noexcept { return entries_.rows(); }
  const Matrix& entries() const noexcept { return entries_; }
  double operator()(Index i, Index j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

/// Index triple i < j < k (zero-based).
struct Triad {
  Index i = 0;
  Index j = 0;
  Index k = 0;

  friend bool operator==(const Triad&, const Triad&) = default;
};

enum class Domain { Multiplicative, Additive };

enum class Normalization {
  GeometricMeanOne,    // prod w_i = 1, i.e. sum s_i = 0
  FirstCoordinateOne,  // w_1 = 1, i.e. s_1 = 0
  SumOne,              // sum w_i = 1
  Raw,                 // as computed by the producing method
};

/// Priority weights, either multiplicative (w_i > 0) or additive (s_i = ln w_i).
/// Two priority vectors describe the same ranking when they agree up to a
/// positive factor (multiplicative) or a shift (additive).
class PriorityVector {
 public:
  static PriorityVector multiplicative(Vector weights,
                                       Normalization norm = Normalization::GeometricMeanOne);
  static PriorityVector additive(Vector potentials,
                                 Normalization norm = Normalization::GeometricMeanOne);

  Domain domain() const noexcept { return domain_; }
  Normalization normalization() const noexcept { return norm_; }
  const Vector& weights() const noexcept { return weights_; }
  Index size() const noexcept { return weights_.size(); }

  PriorityVector normalized(Normalization norm) const;
  PriorityVector to_multiplicative() const;
  PriorityVector to_additive() const;

  // Log-domain potentials regardless of the stored domain.
  Vector log_weights() const;

 private:
  PriorityVector(Vector weights, Domain domain, Normalization norm)
      : weights_(std::move(weights)), domain_(domain), norm_(norm) {}

  Vector weights_;
  Domain domain_;
  Normalization norm_;
};

/// True when both vectors rank identically: max |Δs_i - mean Δs| <= tol on
/// the log potentials, which is a relative tolerance on the weights.
bool equal_up_to_scaling(const PriorityVector& a, const PriorityVector& b, double tol);

PCMatrix make_reciprocal(const Matrix& raw);

AdditiveMatrix log_transform(const PCMatrix& m);
PCMatrix exp_transform(const AdditiveMatrix& a);

std::vector<Triad> triads(Index n);

/// Largest |a_ij + a_jk - a_ik| over all triads; 0 when n < 3.
double max_triad_deviation(const AdditiveMatrix& a);

bool is_consistent(const AdditiveMatrix& a, double tol = kConsistencyTol);
bool is_consistent(const PCMatrix& m, double tol = kConsistencyTol);

PriorityVector priority_from_consistent(const PCMatrix& m,
                                        Normalization norm = Normalization::GeometricMeanOne);

AdditiveMatrix reconstruct_additive(const PriorityVector& v);
PCMatrix reconstruct_multiplicative(const PriorityVector& v);

/// Row geometric means. Natively geometric-mean-one for reciprocal input.
PriorityVector gmm_priority(const PCMatrix& m);

}  // namespace pcc
