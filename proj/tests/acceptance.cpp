// Acceptance suite: one PASS/FAIL line per criterion.
// Exit status is 0 unless --strict is given and some criterion failed.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pcc/closed_form.hpp"
#include "pcc/consistent_subspace.hpp"
#include "pcc/inconsistency.hpp"
#include "pcc/nonlinear_projection.hpp"
#include "pcc/random.hpp"

using namespace pcc;

namespace {

Matrix mat3(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
  Matrix m(3, 3);
  m << a, b, c, d, e, f, g, h, i;
  return m;
}

const AdditiveMatrix kA(mat3(0, 2, 7, -2, 0, 3, -7, -3, 0));

TraceForm dense_form() {
  return TraceForm{{
      {mat3(1, 1, 2, 1, 2, 3, 2, 3, 6), mat3(2, 3, 2, 3, 7, 3, 2, 3, 5)},
      {mat3(2, 1, 1, 1, 2, 1, 1, 1, 5), mat3(5, 2, 1, 2, 5, 1, 1, 1, 1)},
  }};
}

TraceForm diagonal_form() {
  return TraceForm{{
      {mat3(1, 0, 0, 0, 2, 0, 0, 0, 3), mat3(3, 0, 0, 0, 1, 0, 0, 0, 2)},
      {mat3(2, 0, 0, 0, 3, 0, 0, 0, 1), mat3(1, 0, 0, 0, 3, 0, 0, 0, 2)},
  }};
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Collects sub-check failures for one criterion.
struct Criterion {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream out;
      out.precision(17);
      out << what << ": got " << got << ", want " << want;
      failures.push_back(out.str());
    }
  }
};

struct Runner {
  int failed = 0;

  void report(int id, const std::string& title, const std::function<void(Criterion&)>& body) {
    Criterion c;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", id, title.c_str());
    for (const std::string& f : c.failures) std::printf("       %s\n", f.c_str());
    std::fflush(stdout);
  }
};

double g_direct(const Matrix& m, const Vector& rho, const Vector& x) {
  double acc = 0.0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const double d = m(i, j) - x[i] / x[j];
      acc += rho[i] * rho[j] * d * d;
    }
  return acc;
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  Runner run;
  const ValidatedSpec frob = validate(Frobenius{});
  const ProjectionResult frob_proj = project(kA, gram_schmidt(canonical_basis(3), frob));

  run.report(1, "Frobenius fixture", [&](Criterion& c) {
    c.near(frob_proj.coefficients[0], 9.0 / 2, 1e-12, "eps1");
    c.near(frob_proj.coefficients[1], 11.0 / 3, 1e-12, "eps2");
    const Matrix want = mat3(0, 8.0 / 3, 19.0 / 3, -8.0 / 3, 0, 11.0 / 3, -19.0 / 3, -11.0 / 3, 0);
    c.near(max_abs(frob_proj.additive_projection.entries() - want), 0.0, 1e-12, "max |A_proj - expected|");
    const Vector v = frob_proj.priority.normalized(Normalization::GeometricMeanOne).weights();
    const Vector e{{std::exp(3.0), std::exp(1.0 / 3), std::exp(-10.0 / 3)}};
    c.near(((v - e).array() / e.array()).abs().maxCoeff(), 0.0, 1e-10, "priority relative error");
  });

  run.report(2, "Trace-form fixture (dense factors)", [&](Criterion& c) {
    const ValidatedSpec t = validate(dense_form());
    const OrthogonalBasis o = gram_schmidt(canonical_basis(3), t);
    const Matrix e1 = o.matrices()[0];
    c.near(max_abs(apply_operator(t, e1) - mat3(-5, 9, 4, -17, -5, -3, -35, -13, -6)), 0.0, 1e-12, "op(E1)");
    c.near(evaluate(t, e1, canonical_basis(3).matrices()[1]), 49.0, 1e-12, "<E1,B2>");
    c.near(evaluate(t, e1, e1), 65.0, 1e-12, "<E1,E1>");
    c.near(max_abs(o.matrices()[1] - mat3(0, -49, 16, 49, 0, 65, -16, -65, 0) / 65.0), 0.0, 1e-12, "E2");
    c.near(evaluate(t, kA.entries(), e1), 355.0, 1e-12, "<A,E1>");
    const ProjectionResult p = project(kA, o);
    c.near(p.coefficients[0], 71.0 / 13, 1e-12, "eps1");
    c.near(p.coefficients[1], 59345.0 / 15784, 1e-12, "eps2");
  });

  run.report(3, "Diagonal trace-form fixture", [&](Criterion& c) {
    const ValidatedSpec t = validate(diagonal_form());
    const OrthogonalBasis o = gram_schmidt(canonical_basis(3), t);
    const Matrix& e1 = o.matrices()[0];
    const Matrix& e2 = o.matrices()[1];
    c.near(evaluate(t, e1, canonical_basis(3).matrices()[1]), 16.0, 1e-12, "<E1,B2>");
    c.near(evaluate(t, e1, e1), 32.0, 1e-12, "<E1,E1>");
    c.near(evaluate(t, kA.entries(), e1), 144.0, 1e-12, "<A,E1>");
    c.near(evaluate(t, kA.entries(), e2), 88.0, 1e-12, "<A,E2>");
    c.near(evaluate(t, e2, e2), 24.0, 1e-12, "<E2,E2>");
    const ProjectionResult p = project(kA, o);
    c.near(p.coefficients[0], 9.0 / 2, 1e-12, "eps1");
    c.near(p.coefficients[1], 11.0 / 3, 1e-12, "eps2");
    c.near(max_abs(p.additive_projection.entries() - frob_proj.additive_projection.entries()), 0.0, 1e-12,
           "projection vs Frobenius");
    c.expect(equal_up_to_scaling(p.priority, gmm_priority(exp_transform(kA)), 1e-10), "priority differs from v(M)");
  });

  run.report(4, "Closed form matches weighted Gram-Schmidt (200 instances)", [&](Criterion& c) {
    MatrixGenerator gen(4001);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const Index n = gen.uniform_int(3, 7);
      const AdditiveMatrix a = gen.antisymmetric(n, 3.0);
      const WeightVector rho = gen.weights(n);
      const Matrix cf = reconstruct_additive(closed_form_sigma(a, rho)).entries();
      const Matrix gs = project(a, gram_schmidt(canonical_basis(n), rho.inner_product())).additive_projection.entries();
      worst = std::max(worst, max_abs(cf - gs));
    }
    c.near(worst, 0.0, 1e-10, "worst entrywise difference");
  });

  run.report(5, "GMM of the Frobenius projection equals GMM of the input (200 instances)", [&](Criterion& c) {
    MatrixGenerator gen(5001);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
      const PCMatrix m = gen.noisy_pc(gen.uniform_int(3, 8), 1.0);
      const PCMatrix proj = approximate(m, frob).multiplicative_projection;
      if (!equal_up_to_scaling(gmm_priority(proj), gmm_priority(m), 1e-10)) ++bad;
    }
    c.expect(bad == 0, std::to_string(bad) + " instances differ");
  });

  run.report(6, "Kii invariance under consistent shifts (200 pairs)", [&](Criterion& c) {
    MatrixGenerator gen(6001);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const Index n = gen.uniform_int(3, 7);
      const auto [k1, k2] = kii_invariance_check(gen.antisymmetric(n, 2.0), gen.consistent_additive(n));
      worst = std::max(worst, std::abs(k1 - k2));
    }
    c.near(worst, 0.0, 1e-12, "worst |Kii(exp(A-B)) - Kii(exp(A))|");
    const auto [e1, e2] = kii_invariance_check(kA, frob_proj.additive_projection);
    c.near(e1, 0.864665, 1e-6, "Kii(exp(A - A_proj))");
    c.near(e2, 0.864665, 1e-6, "Kii(exp(A))");
  });

  run.report(7, "Idempotence of the approximation pipeline (100 instances)", [&](Criterion& c) {
    MatrixGenerator gen(7001);
    int bad = 0;
    for (int t = 0; t < 100; ++t) {
      const Index n = gen.uniform_int(3, 7);
      const PCMatrix m = gen.noisy_pc(n, 1.0);
      if (!check_idempotence(m, gen.weights(n), 1e-10)) ++bad;
    }
    c.expect(bad == 0, std::to_string(bad) + " instances moved");
  });

  run.report(8, "Nonlinear solver", [&](Criterion& c) {
    MatrixGenerator gen(8001);
    int grad_bad = 0;
    for (int t = 0; t < 100; ++t) {
      const Index n = gen.uniform_int(3, 6);
      const PCMatrix m = gen.noisy_pc(n, 0.7, 1.0);
      const WeightVector rho = gen.weights(n);
      Vector x(n);
      x[0] = 1.0;
      x.tail(n - 1) = gen.positive_vector(n - 1, 0.3, 3.0);
      const std::function<double(const Vector&)> f = [&](const Vector& v) {
        return g_direct(m.entries(), rho.values(), v);
      };
      const Vector g = objective_gradient(m, x, rho);
      for (Index i = 1; i < n; ++i) {
        const double fd = oracle::central_difference(f, x, i, 1e-6 * x[i]);
        if (std::abs(g[i - 1] - fd) > 1e-5 * std::max(1.0, std::abs(fd))) ++grad_bad;
      }
    }
    c.expect(grad_bad == 0, std::to_string(grad_bad) + " gradient components off");

    int converged = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      MatrixGenerator g2(80000 + seed);
      const Index n = g2.uniform_int(3, 6);
      const NonlinearSolveReport r = newton_solve(g2.noisy_pc(n, 0.1), WeightVector::uniform(n));
      if (r.converged && r.gradient_max_norm <= 1e-10) ++converged;
    }
    c.expect(converged >= 495, std::to_string(converged) + "/500 converged");

    const PCMatrix m = exp_transform(kA);
    const WeightVector u = WeightVector::uniform(3);
    const NonlinearSolveReport r = newton_solve(m, u);
    const double d_nl = weighted_distance(m, reconstruct_multiplicative(PriorityVector::multiplicative(r.x)), u);
    const double d_lin = weighted_distance(m, frob_proj.multiplicative_projection, u);
    c.expect(d_nl <= d_lin, "Newton distance " + std::to_string(d_nl) + " > linearized " + std::to_string(d_lin));
  });

  run.report(9, "Projections depend on the inner product", [&](Criterion& c) {
    const ProjectionResult dense = project(kA, gram_schmidt(canonical_basis(3), validate(dense_form())));
    const ProjectionResult diag = project(kA, gram_schmidt(canonical_basis(3), validate(diagonal_form())));
    const double gap = max_abs(dense.additive_projection.entries() - frob_proj.additive_projection.entries());
    c.expect(gap > 0.1, "dense trace form differs by only " + std::to_string(gap));
    c.near(max_abs(diag.additive_projection.entries() - frob_proj.additive_projection.entries()), 0.0, 1e-12,
           "diagonal trace form vs Frobenius");
  });

  std::printf("%d of 9 criteria passed\n", 9 - run.failed);
  return strict && run.failed > 0 ? 1 : 0;
}
