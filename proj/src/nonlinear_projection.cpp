#include "pcc/nonlinear_projection.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "pcc/log.hpp"

namespace pcc {

namespace {

// The solver works in extended precision: near the optimum the gradient is a
// sum of terms as large as (1/x_i)(x_j/x_i)^2, and in double one ulp of a
// small coordinate already moves it past tol_grad.
using Real = long double;
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

constexpr Real kPositivityFloor = 1e-12L;
constexpr Real kRelativeFdStep = 1e-6L;
// g may rise by this many ulps when the gradient still shrinks; below that
// the objective comparison is pure rounding.
constexpr Real kFlatUlps = 64;

void require_point(Index n, const Vector& x) {
  if (x.size() != n) throw Error(ErrorCode::DimensionMismatch, "x has length " + std::to_string(x.size()));
  for (Index i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !std::isfinite(x[i])) {
      throw Error(ErrorCode::NonPositiveCoordinate, "x_" + std::to_string(i + 1) + " = " + std::to_string(x[i]));
    }
  }
  if (std::abs(x[0] - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "x_1 must equal 1");
}

void require_weights(Index n, const WeightVector& rho) {
  if (rho.size() != n) throw Error(ErrorCode::DimensionMismatch, "weights have length " + std::to_string(rho.size()));
}

struct Problem {
  RMatrix m;
  RMatrix m_inv;  // 1 / m_ij, kept separately to avoid recomputing reciprocals
  RVector rho;

  Index n() const { return m.rows(); }

  Real objective(const RVector& x) const {
    Real acc = 0;
    for (Index i = 0; i < n(); ++i) {
      for (Index j = 0; j < n(); ++j) {
        const Real r = m(i, j) - x[i] / x[j];
        acc += rho[i] * rho[j] * r * r;
      }
    }
    return acc;
  }

  // Stationarity residuals G_i for i = 2..n (see gradient()).
  RVector residual(const RVector& x) const {
    RVector out(n() - 1);
    for (Index i = 1; i < n(); ++i) {
      Real acc = 0;
      for (Index j = 0; j < n(); ++j) {
        const Real up = x[j] / x[i];
        const Real down = x[i] / x[j];
        acc += rho[j] * (up * (m_inv(i, j) - up) - down * (m(i, j) - down));
      }
      out[i - 1] = acc / x[i];
    }
    return out;
  }
};

Problem make_problem(const PCMatrix& pc, const WeightVector& rho) {
  Problem p;
  p.m = pc.entries().cast<Real>();
  p.m_inv = p.m.cwiseInverse();
  p.rho = rho.values().cast<Real>();
  return p;
}

Real max_abs(const RVector& v) { return v.size() == 0 ? Real(0) : v.cwiseAbs().maxCoeff(); }

struct Attempt {
  RVector x;
  Real objective;
  Real grad_norm;
  bool accepted;
};

// Halving line search along `dir` (on x_2..x_n) with the positivity cap.
Attempt line_search(const Problem& p, const RVector& x, Real f0, Real g0, const RVector& dir, int max_halvings) {
  Real t = 1;
  for (Index k = 0; k < dir.size(); ++k) {
    if (dir[k] < 0) t = std::min(t, Real(0.99) * (x[k + 1] - kPositivityFloor) / -dir[k]);
  }
  const Real flat = f0 * (1 + kFlatUlps * std::numeric_limits<Real>::epsilon());
  for (int h = 0; h <= max_halvings; ++h, t /= 2) {
    RVector xn = x;
    xn.tail(dir.size()) += t * dir;
    if ((xn.tail(dir.size()).array() <= kPositivityFloor).any()) continue;
    const Real fn = p.objective(xn);
    if (!std::isfinite(static_cast<double>(fn))) continue;
    if (fn <= f0) return {xn, fn, max_abs(p.residual(xn)), true};
    if (fn <= flat) {
      const Real gn = max_abs(p.residual(xn));
      if (gn < g0) return {xn, fn, gn, true};
    }
  }
  return {x, f0, g0, false};
}

NonlinearSolveReport run_newton(const Problem& p, RVector x, const SolverOptions& opts) {
  const Index n = p.n();
  const Index m = n - 1;
  NonlinearSolveReport report;
  report.start_point = x.cast<double>();

  Real f = p.objective(x);
  RVector res = p.residual(x);
  Real gnorm = max_abs(res);
  report.objective_trace.push_back(static_cast<double>(f));
  // d g / d x_i = 2 rho_i * residual_i
  const RVector scale = 2 * p.rho.tail(m);

  int it = 0;
  for (; gnorm > opts.tol_grad && it < opts.max_iter; ++it) {
    RMatrix jac(m, m);
    for (Index k = 0; k < m; ++k) {
      const Real h = kRelativeFdStep * x[k + 1];
      RVector xp = x;
      RVector xm = x;
      xp[k + 1] += h;
      xm[k + 1] -= h;
      jac.col(k) = (p.residual(xp) - p.residual(xm)) / (2 * h);
    }
    RMatrix hess = scale.asDiagonal() * jac;
    hess = (Real(0.5) * (hess + hess.transpose())).eval();
    const RVector grad = scale.cwiseProduct(res);

    // Newton direction, shifted by mu * diag|H| until it points downhill.
    RVector dir;
    bool newton_ok = false;
    const RVector diag = hess.diagonal().cwiseAbs().array() + std::numeric_limits<Real>::min();
    Real mu = 0;
    for (int attempt = 0; attempt < 40; ++attempt) {
      RMatrix shifted = hess;
      shifted.diagonal() += mu * diag;
      dir = shifted.partialPivLu().solve(-grad);
      if (dir.allFinite() && dir.dot(grad) < 0) {
        newton_ok = true;
        break;
      }
      mu = mu == 0 ? Real(1e-6) : mu * 10;
    }

    Attempt step{x, f, gnorm, false};
    if (newton_ok) step = line_search(p, x, f, gnorm, dir, opts.max_halvings);
    if (!step.accepted) {
      ++report.hessian_fallbacks;
      const RVector down = -grad / std::max(max_abs(grad), std::numeric_limits<Real>::min()) * max_abs(x.tail(m));
      step = line_search(p, x, f, gnorm, down, opts.max_halvings);
    }
    if (!step.accepted) {
      PCC_DEBUG("newton: stalled at iteration " << it << " |G| = " << static_cast<double>(gnorm));
      break;
    }
    x = step.x;
    f = step.objective;
    res = p.residual(x);
    gnorm = max_abs(res);
    report.objective_trace.push_back(static_cast<double>(f));
    PCC_DEBUG("newton: iter " << it + 1 << " g = " << static_cast<double>(f) << " |G| = " << static_cast<double>(gnorm)
                              << (newton_ok ? "" : " (gradient step)"));
  }

  report.x = x.cast<double>();
  report.x[0] = 1.0;
  report.objective_value = static_cast<double>(f);
  report.gradient_max_norm = static_cast<double>(gnorm);
  report.iterations = it;
  report.converged = gnorm <= opts.tol_grad;
  return report;
}

}  // namespace

double objective(const PCMatrix& m, const Vector& x, const Matrix& weight_grid) {
  const Index n = m.size();
  require_point(n, x);
  if (weight_grid.rows() != n || weight_grid.cols() != n) throw Error(ErrorCode::DimensionMismatch, "weight grid");
  if ((weight_grid - weight_grid.transpose()).cwiseAbs().maxCoeff() > 1e-12 * weight_grid.cwiseAbs().maxCoeff()) {
    throw Error(ErrorCode::NotSymmetric, "weight grid");
  }
  if (!(weight_grid.minCoeff() > 0.0)) throw Error(ErrorCode::NonPositiveEntry, "weight grid");
  Real acc = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Real r = Real(m(i, j)) - Real(x[i]) / Real(x[j]);
      acc += Real(weight_grid(i, j)) * r * r;
    }
  }
  return static_cast<double>(acc);
}

double objective(const PCMatrix& m, const Vector& x, const WeightVector& rho) {
  require_weights(m.size(), rho);
  require_point(m.size(), x);
  return static_cast<double>(make_problem(m, rho).objective(x.cast<Real>()));
}

Vector gradient(const PCMatrix& m, const Vector& x, const WeightVector& rho) {
  require_weights(m.size(), rho);
  require_point(m.size(), x);
  return make_problem(m, rho).residual(x.cast<Real>()).cast<double>();
}

Vector objective_gradient(const PCMatrix& m, const Vector& x, const WeightVector& rho) {
  const Vector g = gradient(m, x, rho);
  return 2.0 * rho.values().tail(g.size()).cwiseProduct(g);
}

double weighted_distance(const PCMatrix& m, const PCMatrix& c, const WeightVector& rho) {
  require_weights(m.size(), rho);
  if (c.size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "matrices differ in size");
  const Vector& w = rho.values();
  Real acc = 0;
  for (Index i = 0; i < m.size(); ++i) {
    for (Index j = 0; j < m.size(); ++j) {
      const Real r = Real(m(i, j)) - Real(c(i, j));
      acc += Real(w[i]) * Real(w[j]) * r * r;
    }
  }
  return static_cast<double>(std::sqrt(acc));
}

NonlinearSolveReport newton_solve(const PCMatrix& m, const WeightVector& rho, const SolverOptions& opts) {
  require_weights(m.size(), rho);
  const Problem p = make_problem(m, rho);
  const Index n = m.size();

  // Closed-form weighted geometric-mean start, rescaled to x_1 = 1 in the
  // log domain so the rescale itself adds no rounding to x_1.
  const Vector s = closed_form_sigma(log_transform(m), rho).weights();
  RVector start(n);
  for (Index i = 0; i < n; ++i) start[i] = std::exp(Real(s[i]) - Real(s[0]));
  start[0] = 1;

  NonlinearSolveReport best = run_newton(p, start, opts);
  if (opts.multistart_count <= 0) return best;

  std::mt19937_64 rng(opts.rng_seed);
  std::normal_distribution<double> gauss(0.0, opts.multistart_spread);
  for (int r = 1; r <= opts.multistart_count; ++r) {
    RVector alt = start;
    for (Index i = 1; i < n; ++i) alt[i] *= std::exp(Real(gauss(rng)));
    NonlinearSolveReport candidate = run_newton(p, alt, opts);
    candidate.restart_index = r;
    PCC_DEBUG("newton: restart " << r << " g = " << candidate.objective_value);
    const bool better = (candidate.converged && !best.converged) ||
                        (candidate.converged == best.converged && candidate.objective_value < best.objective_value);
    if (better) best = std::move(candidate);
  }
  return best;
}

}  // namespace pcc
