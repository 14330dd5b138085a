#pragma once

#include <utility>
#include <vector>

#include "pcc/pc_core.hpp"

namespace pcc {

struct TriadReport {
  Triad triad;
  double ratio_forward = 1.0;  // m_ik / (m_ij m_jk)
  double local_index = 0.0;    // 1 - min(r, 1/r)
};

// Kii evaluated in the log domain: each triad contributes
// 1 - exp(-|a_ik - a_ij - a_jk|). Returns 0 when n < 3 (no triads).
double kii(const AdditiveMatrix& a);
double kii(const PCMatrix& m);

/// One report per triad, sorted by descending local index; ties keep
/// lexicographic triad order.
std::vector<TriadReport> triad_reports(const PCMatrix& m);

/// (Kii(exp(A - B)), Kii(exp(A))) for additively consistent B. Both are
/// computed without leaving the log domain.
std::pair<double, double> kii_invariance_check(const AdditiveMatrix& a, const AdditiveMatrix& b);

}  // namespace pcc
