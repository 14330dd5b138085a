#pragma once

#include <cmath>

#include <doctest.h>

#include "pcc/error.hpp"
#include "pcc/inner_products.hpp"
#include "pcc/pc_core.hpp"

namespace fixtures {

using pcc::Matrix;

// Runs fn and returns the code of the pcc::Error it throws.
template <class F>
pcc::ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const pcc::Error& e) {
    return e.code();
  }
  FAIL("expected pcc::Error");
  return pcc::ErrorCode::InvalidArgument;
}

inline Matrix mat3(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
  Matrix m(3, 3);
  m << a, b, c, d, e, f, g, h, i;
  return m;
}

// The running 3x3 example: M = exp(A).
inline pcc::AdditiveMatrix example_a() { return pcc::AdditiveMatrix(mat3(0, 2, 7, -2, 0, 3, -7, -3, 0)); }
inline pcc::PCMatrix example_m() { return pcc::exp_transform(example_a()); }

// Its Frobenius projection [[0,8/3,19/3],...].
inline Matrix example_frobenius_projection() {
  return mat3(0, 8.0 / 3, 19.0 / 3, -8.0 / 3, 0, 11.0 / 3, -19.0 / 3, -11.0 / 3, 0);
}

// GMM priority of the example, log-domain potentials (3, 1/3, -10/3).
inline pcc::Vector example_potentials() {
  pcc::Vector s(3);
  s << 3.0, 1.0 / 3, -10.0 / 3;
  return s;
}

inline Matrix b1() { return mat3(0, 1, 1, -1, 0, 0, -1, 0, 0); }
inline Matrix b2() { return mat3(0, 0, 1, 0, 0, 1, -1, -1, 0); }

// Trace form with dense PSD factors.
inline pcc::TraceForm dense_trace_form() {
  return pcc::TraceForm{{
      {mat3(1, 1, 2, 1, 2, 3, 2, 3, 6), mat3(2, 3, 2, 3, 7, 3, 2, 3, 5)},
      {mat3(2, 1, 1, 1, 2, 1, 1, 1, 5), mat3(5, 2, 1, 2, 5, 1, 1, 1, 1)},
  }};
}

// Trace form with diagonal factors.
inline pcc::TraceForm diagonal_trace_form() {
  return pcc::TraceForm{{
      {mat3(1, 0, 0, 0, 2, 0, 0, 0, 3), mat3(3, 0, 0, 0, 1, 0, 0, 0, 2)},
      {mat3(2, 0, 0, 0, 3, 0, 0, 0, 1), mat3(1, 0, 0, 0, 3, 0, 0, 0, 2)},
  }};
}

}  // namespace fixtures
