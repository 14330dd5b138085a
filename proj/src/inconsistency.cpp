#include "pcc/inconsistency.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pcc {

namespace {

double local_index(double log_ratio) { return -std::expm1(-std::abs(log_ratio)); }

}  // namespace

double kii(const AdditiveMatrix& a) {
  // 1 - exp(-x) is monotone in x, so maximize the log deviation first.
  return local_index(max_triad_deviation(a));
}

double kii(const PCMatrix& m) { return kii(log_transform(m)); }

std::vector<TriadReport> triad_reports(const PCMatrix& m) {
  const AdditiveMatrix a = log_transform(m);
  std::vector<TriadReport> out;
  for (const Triad& t : triads(m.size())) {
    const double log_ratio = a(t.i, t.k) - a(t.i, t.j) - a(t.j, t.k);
    out.push_back({t, std::exp(log_ratio), local_index(log_ratio)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TriadReport& x, const TriadReport& y) { return x.local_index > y.local_index; });
  return out;
}

std::pair<double, double> kii_invariance_check(const AdditiveMatrix& a, const AdditiveMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in size");
  if (!is_consistent(b)) {
    throw Error(ErrorCode::NotConsistent, "B has triad deviation " + std::to_string(max_triad_deviation(b)));
  }
  return {kii(AdditiveMatrix(a.entries() - b.entries())), kii(a)};
}

}  // namespace pcc
