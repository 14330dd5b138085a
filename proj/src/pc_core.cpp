#include "pcc/pc_core.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pcc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotReciprocal: return "NotReciprocal";
    case ErrorCode::NotAntiSymmetric: return "NotAntiSymmetric";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotConsistent: return "NotConsistent";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::FormNotDefinite: return "FormNotDefinite";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::NonPositiveCoordinate: return "NonPositiveCoordinate";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

std::string cell(Index i, Index j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void require_square(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (m.rows() < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "n = " + std::to_string(m.rows()) + ", need n >= 2");
  }
}

void require_positive(const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (!(m(i, j) > 0.0) || !std::isfinite(m(i, j))) {
        throw Error(ErrorCode::NonPositiveEntry, "entry " + cell(i, j) + " = " + std::to_string(m(i, j)));
      }
    }
  }
}

// Largest finite argument of exp().
const double kMaxExponent = std::log(std::numeric_limits<double>::max());

}  // namespace

PCMatrix::PCMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_);
  require_positive(entries_);
  const Index n = size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double drift = std::abs(std::log(entries_(i, j)) + std::log(entries_(j, i)));
      if (drift > kReciprocityTol) {
        throw Error(ErrorCode::NotReciprocal,
                    "entries " + cell(i, j) + " and " + cell(j, i) + " are not reciprocal (|ln(m_ij m_ji)| = " +
                        std::to_string(drift) + ")");
      }
    }
  }
}

AdditiveMatrix::AdditiveMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_);
  const Index n = size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double a = entries_(i, j);
      const double b = entries_(j, i);
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorCode::NotAntiSymmetric, "non-finite entry at " + cell(i, j));
      }
      if (std::abs(a + b) > kReciprocityTol) {
        throw Error(ErrorCode::NotAntiSymmetric, "a" + cell(i, j) + " + a" + cell(j, i) + " = " + std::to_string(a + b));
      }
      const double mid = 0.5 * (a - b);
      entries_(i, j) = mid;
      entries_(j, i) = -mid;
    }
  }
}

PriorityVector PriorityVector::multiplicative(Vector weights, Normalization norm) {
  if (weights.size() == 0) throw Error(ErrorCode::DimensionTooSmall, "empty priority vector");
  for (Index i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::NonPositiveEntry, "priority weight " + std::to_string(i + 1));
    }
  }
  return PriorityVector(std::move(weights), Domain::Multiplicative, Normalization::Raw).normalized(norm);
}

PriorityVector PriorityVector::additive(Vector potentials, Normalization norm) {
  if (potentials.size() == 0) throw Error(ErrorCode::DimensionTooSmall, "empty priority vector");
  if (!potentials.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite potential");
  return PriorityVector(std::move(potentials), Domain::Additive, Normalization::Raw).normalized(norm);
}

Vector PriorityVector::log_weights() const {
  if (domain_ == Domain::Additive) return weights_;
  return weights_.array().log().matrix();
}

PriorityVector PriorityVector::normalized(Normalization norm) const {
  if (norm == Normalization::Raw || norm == norm_) {
    return PriorityVector(weights_, domain_, norm == Normalization::Raw ? norm_ : norm);
  }
  if (domain_ == Domain::Multiplicative) {
    Vector w = weights_;
    switch (norm) {
      case Normalization::GeometricMeanOne:
        w /= std::exp(w.array().log().mean());
        break;
      case Normalization::FirstCoordinateOne:
        w /= w[0];
        w[0] = 1.0;
        break;
      case Normalization::SumOne:
        w /= w.sum();
        break;
      case Normalization::Raw:
        break;
    }
    return PriorityVector(std::move(w), domain_, norm);
  }
  Vector s = weights_;
  switch (norm) {
    case Normalization::GeometricMeanOne:
      s.array() -= s.mean();
      break;
    case Normalization::FirstCoordinateOne:
      s.array() -= s[0];
      s[0] = 0.0;
      break;
    case Normalization::SumOne: {
      const double top = s.maxCoeff();
      s.array() -= top + std::log((s.array() - top).exp().sum());
      break;
    }
    case Normalization::Raw:
      break;
  }
  return PriorityVector(std::move(s), domain_, norm);
}

PriorityVector PriorityVector::to_multiplicative() const {
  if (domain_ == Domain::Multiplicative) return *this;
  return PriorityVector(weights_.array().exp().matrix(), Domain::Multiplicative, norm_);
}

PriorityVector PriorityVector::to_additive() const {
  if (domain_ == Domain::Additive) return *this;
  return PriorityVector(log_weights(), Domain::Additive, norm_);
}

bool equal_up_to_scaling(const PriorityVector& a, const PriorityVector& b, double tol) {
  if (a.size() != b.size()) return false;
  Vector diff = a.log_weights() - b.log_weights();
  diff.array() -= diff.mean();
  return diff.cwiseAbs().maxCoeff() <= tol;
}

PCMatrix make_reciprocal(const Matrix& raw) {
  require_square(raw);
  require_positive(raw);
  const Index n = raw.rows();
  Matrix r = Matrix::Identity(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double g = std::sqrt(raw(i, j) * raw(j, i));
      // Keep already-reciprocal pairs bit-exact.
      const double rij = std::abs(g - 1.0) <= 4 * std::numeric_limits<double>::epsilon() ? raw(i, j) : raw(i, j) / g;
      r(i, j) = rij;
      r(j, i) = 1.0 / rij;
    }
  }
  return PCMatrix(std::move(r));
}

AdditiveMatrix log_transform(const PCMatrix& m) {
  return AdditiveMatrix(m.entries().array().log().matrix());
}

PCMatrix exp_transform(const AdditiveMatrix& a) {
  const double peak = a.entries().cwiseAbs().maxCoeff();
  if (peak > kMaxExponent) {
    throw Error(ErrorCode::Overflow, "|a_ij| = " + std::to_string(peak) + " exceeds the representable exponent range");
  }
  return PCMatrix(a.entries().array().exp().matrix());
}

std::vector<Triad> triads(Index n) {
  std::vector<Triad> out;
  if (n >= 3) out.reserve(static_cast<std::size_t>(n * (n - 1) * (n - 2) / 6));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      for (Index k = j + 1; k < n; ++k) out.push_back({i, j, k});
    }
  }
  return out;
}

double max_triad_deviation(const AdditiveMatrix& a) {
  double worst = 0.0;
  const Index n = a.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      for (Index k = j + 1; k < n; ++k) {
        worst = std::max(worst, std::abs(a(i, j) + a(j, k) - a(i, k)));
      }
    }
  }
  return worst;
}

bool is_consistent(const AdditiveMatrix& a, double tol) { return max_triad_deviation(a) <= tol; }

bool is_consistent(const PCMatrix& m, double tol) { return is_consistent(log_transform(m), tol); }

PriorityVector priority_from_consistent(const PCMatrix& m, Normalization norm) {
  const AdditiveMatrix a = log_transform(m);
  if (!is_consistent(a)) {
    throw Error(ErrorCode::NotConsistent,
                "max triad deviation " + std::to_string(max_triad_deviation(a)) + " exceeds tolerance");
  }
  // a_1j = s_1 - s_j with s_1 = 0.
  Vector s = -a.entries().row(0).transpose();
  s[0] = 0.0;
  return PriorityVector::additive(std::move(s), Normalization::FirstCoordinateOne).to_multiplicative().normalized(norm);
}

AdditiveMatrix reconstruct_additive(const PriorityVector& v) {
  const Vector s = v.log_weights();
  const Index n = s.size();
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = s[i] - s[j];
  }
  return AdditiveMatrix(std::move(a));
}

PCMatrix reconstruct_multiplicative(const PriorityVector& v) {
  if (v.domain() == Domain::Additive) return exp_transform(reconstruct_additive(v));
  const Vector& w = v.weights();
  const Index n = w.size();
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = i == j ? 1.0 : w[i] / w[j];
  }
  return PCMatrix(std::move(m));
}

PriorityVector gmm_priority(const PCMatrix& m) {
  const Vector s = log_transform(m).entries().rowwise().mean();
  return PriorityVector::additive(s, Normalization::Raw).to_multiplicative().normalized(Normalization::GeometricMeanOne);
}

}  // namespace pcc
