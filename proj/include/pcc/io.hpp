#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pcc/inner_products.hpp"
#include "pcc/nonlinear_projection.hpp"
#include "pcc/pc_core.hpp"

namespace pcc::io {

using nlohmann::json;

/// A matrix as written on disk. Multiplicative documents may store any entry
/// as {"log": x}, meaning e^x; `written` keeps the number as it appeared so
/// emission reproduces the input exactly.
///
///   {"domain": "multiplicative", "n": 3,
///    "entries": [[1, {"log": 2}, {"log": 7}], ...]}
struct MatrixDocument {
  Domain domain = Domain::Multiplicative;
  Matrix written;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> log_encoded;

  Index size() const { return written.rows(); }

  // Entry values in the document's domain (e^x for log-encoded entries).
  Matrix values() const;

  // Natural logs of multiplicative entries, taken from the encoding when
  // present; additive documents return their entries unchanged.
  Matrix logs() const;

  friend bool operator==(const MatrixDocument& a, const MatrixDocument& b);
};

MatrixDocument matrix_from_json(const json& j);
json to_json(const MatrixDocument& doc);

/// Plain comma-separated rows; multiplicative only.
MatrixDocument matrix_from_csv(std::string_view text);
std::string to_csv(const MatrixDocument& doc);

MatrixDocument make_document(const PCMatrix& m, bool log_encoding = false);
MatrixDocument make_document(const AdditiveMatrix& a);

/// Additive form of any document. Rejects non-positive multiplicative entries
/// and reciprocity drift above kReciprocityTol unless `repair` is set, in
/// which case make_reciprocal() is applied first.
AdditiveMatrix to_additive(const MatrixDocument& doc, bool repair = false);
PCMatrix to_pc_matrix(const MatrixDocument& doc, bool repair = false);

/// {"kind": "frobenius"}
/// {"kind": "weighted", "rho": [...]}
/// {"kind": "trace_form", "X": [X_1, ...], "Y": [Y_1, ...]}
/// {"kind": "coefficient", "gamma": [[...], ...]}
/// An optional "name" is carried through to reports.
struct InnerProductDocument {
  std::string name;
  InnerProductSpec spec;
};

InnerProductDocument inner_product_from_json(const json& j);
json to_json(const InnerProductDocument& doc);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json_array(const json& j, std::string_view what);
json vector_to_json(const Vector& v);
Vector vector_from_json_array(const json& j, std::string_view what);

struct SolverSummary {
  Vector x;
  double objective_value = 0.0;
  double gradient_max_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  Vector start_point;
  int hessian_fallbacks = 0;
  int restart_index = 0;

  static SolverSummary from(const NonlinearSolveReport& r);
};

struct PriorityTriple {
  Vector geometric_mean_one;
  Vector first_coordinate_one;
  Vector sum_one;

  static PriorityTriple from(const PriorityVector& v);
};

struct RunReport {
  std::string source;
  Domain input_domain = Domain::Multiplicative;
  Index n = 0;
  std::string inner_product_kind;
  std::string inner_product_name;
  json inner_product;  // the product document as loaded
  std::string method;
  double kii_before = 0.0;
  double kii_after = 0.0;
  std::optional<std::string> warning;
  PriorityTriple priority;
  std::vector<double> coefficients;
  double residual_distance = 0.0;
  Matrix additive_projection;
  Matrix multiplicative_projection;
  std::optional<SolverSummary> solver;
};

json to_json(const RunReport& r);
RunReport report_from_json(const json& j);

// Reads a matrix document, choosing CSV by extension and JSON otherwise.
MatrixDocument load_matrix(const std::filesystem::path& path);
InnerProductDocument load_inner_product(const std::filesystem::path& path);
json read_json_file(const std::filesystem::path& path);

}  // namespace pcc::io
