#pragma once

#include <cstdint>
#include <vector>

#include "pcc/closed_form.hpp"
#include "pcc/pc_core.hpp"

namespace pcc {

struct SolverOptions {
  double tol_grad = 1e-10;
  int max_iter = 100;
  int max_halvings = 30;
  // Extra starts drawn as log-normal perturbations of the closed-form start.
  int multistart_count = 0;
  double multistart_spread = 0.5;
  std::uint64_t rng_seed = 0;
};

struct NonlinearSolveReport {
  Vector x;  // x_1 == 1
  double objective_value = 0.0;
  double gradient_max_norm = 0.0;  // max |G_i| over i = 2..n
  int iterations = 0;
  bool converged = false;
  Vector start_point;
  int hessian_fallbacks = 0;  // iterations that took a gradient step
  int restart_index = 0;      // 0 is the closed-form start
  std::vector<double> objective_trace;
};

/// g_M(x) = sum rho_ij (m_ij - x_i/x_j)^2 over all i, j. `weight_grid` must be
/// symmetric with positive entries; x must be positive with x_1 = 1.
double objective(const PCMatrix& m, const Vector& x, const Matrix& weight_grid);
double objective(const PCMatrix& m, const Vector& x, const WeightVector& rho);

/// Left sides of the nonlinear normal equations for i = 2..n:
///   (1/x_i) sum_j rho_j [ (x_j/x_i)(1/m_ij - x_j/x_i) - (x_i/x_j)(m_ij - x_i/x_j) ].
/// Component i equals (1/(2 rho_i)) d g_M / d x_i.
Vector gradient(const PCMatrix& m, const Vector& x, const WeightVector& rho);

/// d g_M / d x_i for i = 2..n with the rank-one grid rho_i rho_j.
Vector objective_gradient(const PCMatrix& m, const Vector& x, const WeightVector& rho);

/// sqrt(sum rho_i rho_j (m_ij - c_ij)^2): the metric g_M is the square of.
double weighted_distance(const PCMatrix& m, const PCMatrix& c, const WeightVector& rho);

/// Damped Newton on x_2..x_n started from the weighted geometric-mean vector.
/// Never throws on non-convergence; inspect `converged`.
NonlinearSolveReport newton_solve(const PCMatrix& m, const WeightVector& rho, const SolverOptions& opts = {});

}  // namespace pcc
