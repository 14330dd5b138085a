#include "pcc/consistent_subspace.hpp"

#include <cmath>
#include <string>

namespace pcc {

namespace {

// Normalized off-diagonal inner product that triggers one extra pass.
constexpr double kReorthogonalizeAbove = 1e-12;

double max_normalized_overlap(const std::vector<Matrix>& es, const std::vector<double>& sq, const ValidatedSpec& spec) {
  double worst = 0.0;
  for (std::size_t p = 0; p < es.size(); ++p) {
    for (std::size_t q = p + 1; q < es.size(); ++q) {
      worst = std::max(worst, std::abs(evaluate(spec, es[p], es[q])) / std::sqrt(sq[p] * sq[q]));
    }
  }
  return worst;
}

}  // namespace

SubspaceBasis::SubspaceBasis(Index n, std::vector<Matrix> matrices) : n_(n), matrices_(std::move(matrices)) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "n = " + std::to_string(n));
  if (static_cast<Index>(matrices_.size()) != n - 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "basis needs " + std::to_string(n - 1) + " matrices, got " + std::to_string(matrices_.size()));
  }
  for (std::size_t k = 0; k < matrices_.size(); ++k) {
    const Matrix& b = matrices_[k];
    const std::string which = "B_" + std::to_string(k + 1);
    if (b.rows() != n || b.cols() != n) throw Error(ErrorCode::DimensionMismatch, which);
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if ((b + b.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw Error(ErrorCode::NotAntiSymmetric, which);
    if (max_triad_deviation(AdditiveMatrix(b)) > kConsistencyTol * scale) throw Error(ErrorCode::NotConsistent, which);
  }
  const Index m = n - 1;
  Matrix gram(m, m);
  for (Index p = 0; p < m; ++p) {
    for (Index q = 0; q < m; ++q) gram(p, q) = matrices_[p].cwiseProduct(matrices_[q]).sum();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 1e-12 * eig.eigenvalues().cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::DegenerateBasis, "basis matrices are linearly dependent");
  }
}

SubspaceBasis canonical_basis(Index n) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "n = " + std::to_string(n) + ", need n >= 2");
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(n - 1));
  for (Index k = 0; k + 1 < n; ++k) {
    Matrix b = Matrix::Zero(n, n);
    for (Index i = 0; i <= k; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        b(i, j) = 1.0;
        b(j, i) = -1.0;
      }
    }
    out.push_back(std::move(b));
  }
  return SubspaceBasis(n, std::move(out));
}

OrthogonalBasis gram_schmidt(const SubspaceBasis& basis, const ValidatedSpec& spec) {
  const Index n = basis.dimension();
  if (!spec.accepts(n)) {
    throw Error(ErrorCode::DimensionMismatch, "inner product bound to n = " + std::to_string(*spec.dimension()));
  }
  OrthogonalBasis out(n, spec);
  auto& es = out.matrices_;
  auto& sq = out.squared_norms_;
  for (const Matrix& b : basis.matrices()) {
    Matrix e = b;
    for (std::size_t j = 0; j < es.size(); ++j) e -= (evaluate(spec, es[j], b) / sq[j]) * es[j];
    const double s = evaluate(spec, e, e);
    if (!(s > kDefiniteTol)) {
      throw Error(ErrorCode::DegenerateBasis, "<E_" + std::to_string(es.size() + 1) + ",E> = " + std::to_string(s));
    }
    es.push_back(std::move(e));
    sq.push_back(s);
  }
  if (max_normalized_overlap(es, sq, spec) > kReorthogonalizeAbove) {
    for (std::size_t k = 1; k < es.size(); ++k) {
      for (std::size_t j = 0; j < k; ++j) es[k] -= (evaluate(spec, es[j], es[k]) / sq[j]) * es[j];
      sq[k] = evaluate(spec, es[k], es[k]);
    }
    out.reorthogonalized_ = true;
  }
  return out;
}

ProjectionResult project(const AdditiveMatrix& a, const OrthogonalBasis& ortho) {
  const Index n = ortho.dimension();
  if (a.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix is " + std::to_string(a.size()) + "x" + std::to_string(a.size()) + ", basis is for n = " +
                    std::to_string(n));
  }
  const auto& es = ortho.matrices();
  const auto& sq = ortho.squared_norms();
  std::vector<double> eps(es.size());
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < es.size(); ++k) {
    eps[k] = evaluate(ortho.spec(), a.entries(), es[k]) / sq[k];
    sum += eps[k] * es[k];
  }
  AdditiveMatrix additive(std::move(sum));
  PCMatrix multiplicative = exp_transform(additive);
  const double residual = distance(ortho.spec(), a.entries(), additive.entries());
  PriorityVector priority = priority_from_consistent(multiplicative);
  return ProjectionResult{std::move(eps), std::move(additive), std::move(multiplicative), residual,
                          std::move(priority)};
}

ProjectionResult approximate(const PCMatrix& m, const ValidatedSpec& spec) {
  const OrthogonalBasis ortho = gram_schmidt(canonical_basis(m.size()), spec);
  return project(log_transform(m), ortho);
}

}  // namespace pcc
