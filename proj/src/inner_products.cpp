#include "pcc/inner_products.hpp"

#include <cmath>
#include <random>
#include <string>

namespace pcc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr Index kFullAuditMaxN = 6;
constexpr int kRandomProbes = 64;

void require_symmetric(const Matrix& m, const std::string& which) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquare, which);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw Error(ErrorCode::NotSymmetric, which);
}

void require_psd(const Matrix& m, const std::string& which) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (eig.eigenvalues().minCoeff() < -kDefiniteTol * top) {
    throw Error(ErrorCode::NotPSD, which + " has eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()));
  }
}

Matrix unit(Index n, Index r, Index s) {
  Matrix e = Matrix::Zero(n, n);
  e(r, s) = 1.0;
  return e;
}

Matrix trace_operator(const TraceForm& form, const Matrix& a) {
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (const auto& p : form.pairs) out.noalias() += p.x * a * p.y;
  return out;
}

Matrix coefficient_operator(const CoefficientForm& form, const Matrix& a) {
  const Index n = a.rows();
  // Row-major flatten so index i*n + j addresses entry (i, j).
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = a;
  const Vector flat = Eigen::Map<const Vector>(rm.data(), n * n);
  const Vector image = form.gamma * flat;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out =
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(image.data(), n, n);
  return out;
}

void audit_definite(const ValidatedSpec& spec, Index n) {
  for (Index r = 0; r < n; ++r) {
    for (Index s = 0; s < n; ++s) {
      const Matrix e = unit(n, r, s);
      if (!(evaluate(spec, e, e) > kDefiniteTol)) {
        throw Error(ErrorCode::FormNotDefinite,
                    "<E_rs,E_rs> <= 0 for (r,s) = (" + std::to_string(r + 1) + "," + std::to_string(s + 1) + ")");
      }
    }
  }
  if (n <= kFullAuditMaxN) {
    const Index big = n * n;
    Matrix gram(big, big);
    for (Index p = 0; p < big; ++p) {
      const Matrix image = apply_operator(spec, unit(n, p / n, p % n));
      for (Index q = 0; q < big; ++q) gram(q, p) = image(q / n, q % n);
    }
    gram = 0.5 * (gram + gram.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (!(eig.eigenvalues().minCoeff() > kDefiniteTol * top)) {
      throw Error(ErrorCode::FormNotDefinite,
                  "Gram matrix over the unit basis has eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()));
    }
    return;
  }
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  for (int probe = 0; probe < kRandomProbes; ++probe) {
    Matrix a(n, n);
    for (Index k = 0; k < a.size(); ++k) a.data()[k] = gauss(rng);
    if (!(evaluate(spec, a, a) > kDefiniteTol * a.squaredNorm())) {
      throw Error(ErrorCode::FormNotDefinite, "random probe " + std::to_string(probe) + " has <A,A> <= 0");
    }
  }
}

void require_dims(const ValidatedSpec& spec, const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "operands are not square matrices of equal size");
  }
  if (!spec.accepts(a.rows())) {
    throw Error(ErrorCode::DimensionMismatch, "inner product is bound to n = " + std::to_string(*spec.dimension()) +
                                                  ", got n = " + std::to_string(a.rows()));
  }
}

}  // namespace

std::string ValidatedSpec::kind() const {
  return std::visit(Overloaded{[](const Frobenius&) { return std::string("frobenius"); },
                               [](const WeightedFrobenius&) { return std::string("weighted"); },
                               [](const TraceForm&) { return std::string("trace_form"); },
                               [](const CoefficientForm&) { return std::string("coefficient"); }},
                    spec_);
}

ValidatedSpec validate(InnerProductSpec spec) {
  const std::optional<Index> dim = std::visit(
      Overloaded{
          [](const Frobenius&) -> std::optional<Index> { return std::nullopt; },
          [](const WeightedFrobenius& w) -> std::optional<Index> {
            if (w.rho.size() == 0) throw Error(ErrorCode::DimensionTooSmall, "empty weight vector");
            for (Index i = 0; i < w.rho.size(); ++i) {
              if (!(w.rho[i] > 0.0) || !std::isfinite(w.rho[i])) {
                throw Error(ErrorCode::NonPositiveEntry, "rho_" + std::to_string(i + 1));
              }
            }
            return w.rho.size();
          },
          [](const TraceForm& t) -> std::optional<Index> {
            if (t.pairs.empty()) throw Error(ErrorCode::InvalidArgument, "trace form needs at least one (X, Y) pair");
            const Index n = t.pairs.front().x.rows();
            for (std::size_t i = 0; i < t.pairs.size(); ++i) {
              const std::string tag = std::to_string(i + 1);
              const auto& p = t.pairs[i];
              if (p.x.rows() != n || p.y.rows() != n || p.x.cols() != n || p.y.cols() != n) {
                throw Error(ErrorCode::DimensionMismatch, "X_" + tag + "/Y_" + tag + " must be " + std::to_string(n) +
                                                              "x" + std::to_string(n));
              }
              require_symmetric(p.x, "X_" + tag);
              require_symmetric(p.y, "Y_" + tag);
              require_psd(p.x, "X_" + tag);
              require_psd(p.y, "Y_" + tag);
            }
            return n;
          },
          [](const CoefficientForm& c) -> std::optional<Index> {
            const Index big = c.gamma.rows();
            const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(big))));
            if (c.gamma.cols() != big || n * n != big || n == 0) {
              throw Error(ErrorCode::DimensionMismatch, "Gamma must be n^2 x n^2");
            }
            require_symmetric(c.gamma, "Gamma");
            Eigen::LLT<Matrix> llt(c.gamma);
            if (llt.info() != Eigen::Success) throw Error(ErrorCode::NotPSD, "Gamma is not positive definite");
            return n;
          },
      },
      spec);
  ValidatedSpec out(std::move(spec), dim);
  // Weighted Frobenius with positive weights and SPD Gamma are definite by
  // construction; trace forms built from PSD factors need the audit.
  if (std::holds_alternative<TraceForm>(out.spec())) audit_definite(out, *dim);
  return out;
}

Matrix apply_operator(const ValidatedSpec& spec, const Matrix& a) {
  require_dims(spec, a, a);
  return std::visit(Overloaded{[&](const Frobenius&) -> Matrix { return a; },
                               [&](const WeightedFrobenius& w) -> Matrix {
                                 return (w.rho * w.rho.transpose()).cwiseProduct(a);
                               },
                               [&](const TraceForm& t) -> Matrix { return trace_operator(t, a); },
                               [&](const CoefficientForm& c) -> Matrix { return coefficient_operator(c, a); }},
                    spec.spec());
}

double evaluate(const ValidatedSpec& spec, const Matrix& a, const Matrix& b) {
  require_dims(spec, a, b);
  return std::visit(Overloaded{[&](const Frobenius&) { return a.cwiseProduct(b).sum(); },
                               [&](const WeightedFrobenius& w) {
                                 return (w.rho.asDiagonal() * a.cwiseProduct(b) * w.rho.asDiagonal()).sum();
                               },
                               [&](const TraceForm& t) { return trace_operator(t, a).cwiseProduct(b).sum(); },
                               [&](const CoefficientForm& c) { return coefficient_operator(c, a).cwiseProduct(b).sum(); }},
                    spec.spec());
}

double norm(const ValidatedSpec& spec, const Matrix& a) { return std::sqrt(std::max(0.0, evaluate(spec, a, a))); }

double distance(const ValidatedSpec& spec, const Matrix& a, const Matrix& b) {
  require_dims(spec, a, b);
  return norm(spec, a - b);
}

}  // namespace pcc
