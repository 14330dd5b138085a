#include "pcc/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace pcc::io {

namespace {

[[noreturn]] void parse_error(const std::string& message) { throw Error(ErrorCode::Parse, message); }

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) parse_error(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_error(where + " is not finite");
  return v;
}

std::string cell(std::string_view what, Index i, Index j) {
  return std::string(what) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

std::string domain_name(Domain d) { return d == Domain::Multiplicative ? "multiplicative" : "additive"; }

Domain domain_from(const std::string& s) {
  if (s == "multiplicative") return Domain::Multiplicative;
  if (s == "additive") return Domain::Additive;
  parse_error("domain must be \"multiplicative\" or \"additive\", got \"" + s + "\"");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Matrix MatrixDocument::values() const {
  Matrix out = written;
  for (Index k = 0; k < out.size(); ++k) {
    if (log_encoded.data()[k]) out.data()[k] = std::exp(written.data()[k]);
  }
  return out;
}

Matrix MatrixDocument::logs() const {
  if (domain == Domain::Additive) return written;
  Matrix out = written;
  for (Index k = 0; k < out.size(); ++k) {
    if (!log_encoded.data()[k]) out.data()[k] = std::log(written.data()[k]);
  }
  return out;
}

bool operator==(const MatrixDocument& a, const MatrixDocument& b) {
  return a.domain == b.domain && a.written.rows() == b.written.rows() && a.written.cols() == b.written.cols() &&
         a.written == b.written && a.log_encoded == b.log_encoded;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json_array(const json& j, std::string_view what) {
  if (!j.is_array() || j.empty()) parse_error(std::string(what) + " must be a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = j[0].is_array() ? static_cast<Index>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      parse_error(std::string(what) + "[" + std::to_string(i) + "] must be an array of " + std::to_string(cols));
    }
    for (Index c = 0; c < cols; ++c) m(i, c) = number_at(row[static_cast<std::size_t>(c)], cell(what, i, c));
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json_array(const json& j, std::string_view what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array");
  Vector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) {
    v[i] = number_at(j[static_cast<std::size_t>(i)], std::string(what) + "[" + std::to_string(i) + "]");
  }
  return v;
}

MatrixDocument matrix_from_json(const json& j) {
  if (!j.is_object()) parse_error("matrix document must be a JSON object");
  MatrixDocument doc;
  doc.domain = domain_from(j.value("domain", std::string("multiplicative")));
  if (!j.contains("entries")) parse_error("matrix document has no \"entries\"");
  const json& rows = j["entries"];
  if (!rows.is_array() || rows.empty()) parse_error("entries must be a non-empty array of rows");
  const auto n = static_cast<Index>(rows.size());
  if (j.contains("n") && (!j["n"].is_number_integer() || j["n"].get<Index>() != n)) {
    parse_error("\"n\" does not match the number of rows (" + std::to_string(n) + ")");
  }
  doc.written.resize(n, n);
  doc.log_encoded.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      parse_error("entries[" + std::to_string(i) + "] must have " + std::to_string(n) + " entries (square matrix)");
    }
    for (Index c = 0; c < n; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      const std::string where = cell("entries", i, c);
      if (e.is_object()) {
        if (doc.domain == Domain::Additive) parse_error(where + ": {\"log\": x} is only valid in multiplicative documents");
        if (e.size() != 1 || !e.contains("log")) parse_error(where + " must be a number or {\"log\": x}");
        doc.written(i, c) = number_at(e["log"], where + ".log");
        doc.log_encoded(i, c) = true;
      } else {
        doc.written(i, c) = number_at(e, where);
        doc.log_encoded(i, c) = false;
        if (doc.domain == Domain::Multiplicative && !(doc.written(i, c) > 0.0)) {
          throw Error(ErrorCode::NonPositiveEntry, where + " = " + std::to_string(doc.written(i, c)));
        }
      }
    }
  }
  return doc;
}

json to_json(const MatrixDocument& doc) {
  json rows = json::array();
  for (Index i = 0; i < doc.size(); ++i) {
    json row = json::array();
    for (Index c = 0; c < doc.size(); ++c) {
      if (doc.log_encoded(i, c)) {
        row.push_back(json{{"log", doc.written(i, c)}});
      } else {
        row.push_back(doc.written(i, c));
      }
    }
    rows.push_back(std::move(row));
  }
  return json{{"domain", domain_name(doc.domain)}, {"n", doc.size()}, {"entries", std::move(rows)}};
}

MatrixDocument matrix_from_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<double> row;
    std::istringstream cells(t);
    std::string field;
    while (std::getline(cells, field, ',')) {
      const std::string f = trim(field);
      const std::string where = "row " + std::to_string(rows.size() + 1) + ", column " + std::to_string(row.size() + 1);
      try {
        std::size_t used = 0;
        const double v = std::stod(f, &used);
        if (used != f.size()) parse_error(where + ": \"" + f + "\" is not a number");
        row.push_back(v);
      } catch (const std::logic_error&) {
        parse_error(where + ": \"" + f + "\" is not a number");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_error("CSV matrix is empty");
  json j = json{{"domain", "multiplicative"}, {"entries", rows}};
  return matrix_from_json(j);
}

std::string to_csv(const MatrixDocument& doc) {
  if (doc.domain != Domain::Multiplicative) throw Error(ErrorCode::InvalidArgument, "CSV holds multiplicative matrices only");
  const Matrix v = doc.values();
  std::ostringstream out;
  out.precision(17);
  for (Index i = 0; i < v.rows(); ++i) {
    for (Index c = 0; c < v.cols(); ++c) out << (c ? "," : "") << v(i, c);
    out << '\n';
  }
  return out.str();
}

MatrixDocument make_document(const PCMatrix& m, bool log_encoding) {
  MatrixDocument doc;
  doc.domain = Domain::Multiplicative;
  const Index n = m.size();
  doc.log_encoded = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, log_encoding);
  doc.written = log_encoding ? log_transform(m).entries() : m.entries();
  return doc;
}

MatrixDocument make_document(const AdditiveMatrix& a) {
  MatrixDocument doc;
  doc.domain = Domain::Additive;
  doc.written = a.entries();
  doc.log_encoded = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(a.size(), a.size(), false);
  return doc;
}

AdditiveMatrix to_additive(const MatrixDocument& doc, bool repair) {
  if (doc.domain == Domain::Additive) return AdditiveMatrix(doc.written);
  if (repair) return log_transform(make_reciprocal(doc.values()));
  // The reciprocity check happens on the logs, so {"log"} fixtures never
  // round-trip through exp().
  try {
    return AdditiveMatrix(doc.logs());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotAntiSymmetric) throw;
    throw Error(ErrorCode::NotReciprocal, std::string(e.what()) + " (pass --repair to symmetrize by geometric means)");
  }
}

PCMatrix to_pc_matrix(const MatrixDocument& doc, bool repair) {
  if (doc.domain == Domain::Multiplicative && !repair) {
    to_additive(doc, false);  // validation with a log-domain message
    return PCMatrix(doc.values());
  }
  return exp_transform(to_additive(doc, repair));
}

InnerProductDocument inner_product_from_json(const json& j) {
  if (!j.is_object()) parse_error("inner product document must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) parse_error("inner product document needs a string \"kind\"");
  InnerProductDocument doc;
  doc.name = j.value("name", std::string());
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "frobenius") {
    doc.spec = Frobenius{};
  } else if (kind == "weighted") {
    if (!j.contains("rho")) parse_error("weighted inner product needs \"rho\"");
    doc.spec = WeightedFrobenius{vector_from_json_array(j["rho"], "rho")};
  } else if (kind == "trace_form") {
    if (!j.contains("X") || !j.contains("Y") || !j["X"].is_array() || !j["Y"].is_array()) {
      parse_error("trace_form needs arrays \"X\" and \"Y\"");
    }
    if (j["X"].size() != j["Y"].size()) parse_error("trace_form: X and Y must have the same number of matrices");
    TraceForm form;
    for (std::size_t i = 0; i < j["X"].size(); ++i) {
      const std::string tag = "[" + std::to_string(i) + "]";
      form.pairs.push_back({matrix_from_json_array(j["X"][i], "X" + tag), matrix_from_json_array(j["Y"][i], "Y" + tag)});
    }
    doc.spec = std::move(form);
  } else if (kind == "coefficient") {
    if (!j.contains("gamma")) parse_error("coefficient inner product needs \"gamma\"");
    doc.spec = CoefficientForm{matrix_from_json_array(j["gamma"], "gamma")};
  } else {
    parse_error("unknown inner product kind \"" + kind + "\"");
  }
  return doc;
}

json to_json(const InnerProductDocument& doc) {
  json out = std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Frobenius>) {
          return json{{"kind", "frobenius"}};
        } else if constexpr (std::is_same_v<T, WeightedFrobenius>) {
          return json{{"kind", "weighted"}, {"rho", vector_to_json(s.rho)}};
        } else if constexpr (std::is_same_v<T, TraceForm>) {
          json xs = json::array();
          json ys = json::array();
          for (const auto& p : s.pairs) {
            xs.push_back(matrix_to_json(p.x));
            ys.push_back(matrix_to_json(p.y));
          }
          return json{{"kind", "trace_form"}, {"X", std::move(xs)}, {"Y", std::move(ys)}};
        } else {
          return json{{"kind", "coefficient"}, {"gamma", matrix_to_json(s.gamma)}};
        }
      },
      doc.spec);
  if (!doc.name.empty()) out["name"] = doc.name;
  return out;
}

SolverSummary SolverSummary::from(const NonlinearSolveReport& r) {
  return SolverSummary{r.x,          r.objective_value, r.gradient_max_norm, r.iterations,
                       r.converged,  r.start_point,     r.hessian_fallbacks, r.restart_index};
}

PriorityTriple PriorityTriple::from(const PriorityVector& v) {
  const PriorityVector m = v.to_multiplicative();
  return PriorityTriple{m.normalized(Normalization::GeometricMeanOne).weights(),
                        m.normalized(Normalization::FirstCoordinateOne).weights(),
                        m.normalized(Normalization::SumOne).weights()};
}

json to_json(const RunReport& r) {
  json out{
      {"input", {{"source", r.source}, {"domain", domain_name(r.input_domain)}, {"n", r.n}}},
      {"inner_product", {{"kind", r.inner_product_kind}, {"name", r.inner_product_name}, {"document", r.inner_product}}},
      {"method", r.method},
      {"kii_before", r.kii_before},
      {"kii_after", r.kii_after},
      {"priority",
       {{"geometric_mean_one", vector_to_json(r.priority.geometric_mean_one)},
        {"first_coordinate_one", vector_to_json(r.priority.first_coordinate_one)},
        {"sum_one", vector_to_json(r.priority.sum_one)}}},
      {"coefficients", r.coefficients},
      {"residual_distance", r.residual_distance},
      {"additive_projection", matrix_to_json(r.additive_projection)},
      {"multiplicative_projection", matrix_to_json(r.multiplicative_projection)},
  };
  if (r.warning) out["warning"] = *r.warning;
  if (r.solver) {
    const SolverSummary& s = *r.solver;
    out["solver"] = {{"x", vector_to_json(s.x)},
                     {"objective_value", s.objective_value},
                     {"gradient_max_norm", s.gradient_max_norm},
                     {"iterations", s.iterations},
                     {"converged", s.converged},
                     {"start_point", vector_to_json(s.start_point)},
                     {"hessian_fallbacks", s.hessian_fallbacks},
                     {"restart_index", s.restart_index}};
  }
  return out;
}

RunReport report_from_json(const json& j) {
  try {
    RunReport r;
    r.source = j.at("input").at("source").get<std::string>();
    r.input_domain = domain_from(j.at("input").at("domain").get<std::string>());
    r.n = j.at("input").at("n").get<Index>();
    r.inner_product_kind = j.at("inner_product").at("kind").get<std::string>();
    r.inner_product_name = j.at("inner_product").at("name").get<std::string>();
    r.inner_product = j.at("inner_product").at("document");
    r.method = j.at("method").get<std::string>();
    r.kii_before = j.at("kii_before").get<double>();
    r.kii_after = j.at("kii_after").get<double>();
    if (j.contains("warning")) r.warning = j["warning"].get<std::string>();
    const json& p = j.at("priority");
    r.priority.geometric_mean_one = vector_from_json_array(p.at("geometric_mean_one"), "geometric_mean_one");
    r.priority.first_coordinate_one = vector_from_json_array(p.at("first_coordinate_one"), "first_coordinate_one");
    r.priority.sum_one = vector_from_json_array(p.at("sum_one"), "sum_one");
    r.coefficients = j.at("coefficients").get<std::vector<double>>();
    r.residual_distance = j.at("residual_distance").get<double>();
    r.additive_projection = matrix_from_json_array(j.at("additive_projection"), "additive_projection");
    r.multiplicative_projection = matrix_from_json_array(j.at("multiplicative_projection"), "multiplicative_projection");
    if (j.contains("solver")) {
      const json& s = j["solver"];
      SolverSummary sum;
      sum.x = vector_from_json_array(s.at("x"), "solver.x");
      sum.objective_value = s.at("objective_value").get<double>();
      sum.gradient_max_norm = s.at("gradient_max_norm").get<double>();
      sum.iterations = s.at("iterations").get<int>();
      sum.converged = s.at("converged").get<bool>();
      sum.start_point = vector_from_json_array(s.at("start_point"), "solver.start_point");
      sum.hessian_fallbacks = s.at("hessian_fallbacks").get<int>();
      sum.restart_index = s.at("restart_index").get<int>();
      r.solver = std::move(sum);
    }
    return r;
  } catch (const json::exception& e) {
    parse_error(std::string("run report: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

MatrixDocument load_matrix(const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    std::ifstream in(path);
    if (!in) parse_error("cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return matrix_from_csv(text.str());
  }
  return matrix_from_json(read_json_file(path));
}

InnerProductDocument load_inner_product(const std::filesystem::path& path) {
  return inner_product_from_json(read_json_file(path));
}

}  // namespace pcc::io
