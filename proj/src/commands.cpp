#include "pcc/commands.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "pcc/closed_form.hpp"
#include "pcc/consistent_subspace.hpp"
#include "pcc/inconsistency.hpp"
#include "pcc/random.hpp"

namespace pcc::cli {

namespace {

constexpr const char* kNoTriads = "n < 3: there are no triads, Kii is 0 by convention";

WeightVector weights_for(const io::InnerProductDocument& product, Index n, std::string_view method) {
  if (std::holds_alternative<Frobenius>(product.spec)) return WeightVector::uniform(n);
  if (const auto* w = std::get_if<WeightedFrobenius>(&product.spec)) {
    if (w->rho.size() != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "weights have length " + std::to_string(w->rho.size()) + ", matrix is n = " + std::to_string(n));
    }
    return WeightVector(w->rho);
  }
  throw Error(ErrorCode::InvalidArgument,
              std::string(method) + " needs a frobenius or weighted inner product, not " +
                  io::to_json(product).at("kind").get<std::string>());
}

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in tables
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

std::string fmt(const Vector& v) {
  std::string s = "[";
  for (Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + "]";
}

void render_matrix(std::ostringstream& out, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    out << "    ";
    for (Index j = 0; j < m.cols(); ++j) out << std::setw(14) << fmt(m(i, j));
    out << '\n';
  }
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "gram-schmidt") return Method::GramSchmidt;
  if (name == "closed-form") return Method::ClosedForm;
  if (name == "newton") return Method::Newton;
  throw Error(ErrorCode::InvalidArgument, "unknown method \"" + std::string(name) + "\"");
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::GramSchmidt: return "gram-schmidt";
    case Method::ClosedForm: return "closed-form";
    case Method::Newton: return "newton";
  }
  return "?";
}

io::RunReport run_project(const ProjectRequest& req) {
  const AdditiveMatrix a = io::to_additive(req.matrix, req.repair);
  const Index n = a.size();
  const ValidatedSpec spec = validate(req.product.spec);

  io::RunReport r;
  r.source = req.source;
  r.input_domain = req.matrix.domain;
  r.n = n;
  r.inner_product_kind = spec.kind();
  r.inner_product_name = req.product.name;
  r.inner_product = io::to_json(req.product);
  r.method = std::string(method_name(req.method));
  r.kii_before = kii(a);
  if (n < 3) r.warning = kNoTriads;

  switch (req.method) {
    case Method::GramSchmidt: {
      const ProjectionResult p = project(a, gram_schmidt(canonical_basis(n), spec));
      r.coefficients = p.coefficients;
      r.residual_distance = p.residual_distance;
      r.additive_projection = p.additive_projection.entries();
      r.multiplicative_projection = p.multiplicative_projection.entries();
      r.priority = io::PriorityTriple::from(p.priority);
      break;
    }
    case Method::ClosedForm: {
      const WeightVector rho = weights_for(req.product, n, "closed-form");
      const PriorityVector sigma = closed_form_sigma(a, rho);
      const AdditiveMatrix proj = reconstruct_additive(sigma);
      r.residual_distance = distance(spec, a.entries(), proj.entries());
      r.additive_projection = proj.entries();
      r.multiplicative_projection = exp_transform(proj).entries();
      r.priority = io::PriorityTriple::from(sigma);
      break;
    }
    case Method::Newton: {
      const WeightVector rho = weights_for(req.product, n, "newton");
      const PCMatrix m = exp_transform(a);
      const NonlinearSolveReport sol = newton_solve(m, rho, req.solver);
      const PriorityVector x = PriorityVector::multiplicative(sol.x, Normalization::FirstCoordinateOne);
      const PCMatrix proj = reconstruct_multiplicative(x);
      r.residual_distance = weighted_distance(m, proj, rho);
      r.additive_projection = log_transform(proj).entries();
      r.multiplicative_projection = proj.entries();
      r.priority = io::PriorityTriple::from(x);
      r.solver = io::SolverSummary::from(sol);
      break;
    }
  }
  r.kii_after = kii(AdditiveMatrix(r.additive_projection));
  return r;
}

int exit_code(const io::RunReport& report) { return report.solver && !report.solver->converged ? 3 : 0; }

io::json run_kii(const io::MatrixDocument& doc, bool repair) {
  const PCMatrix m = io::to_pc_matrix(doc, repair);
  io::json triad_rows = io::json::array();
  for (const TriadReport& t : triad_reports(m)) {
    triad_rows.push_back({{"triad", {t.triad.i + 1, t.triad.j + 1, t.triad.k + 1}},
                          {"ratio_forward", t.ratio_forward},
                          {"local_index", t.local_index}});
  }
  io::json out{{"n", m.size()}, {"kii", kii(m)}, {"triads", std::move(triad_rows)}};
  if (m.size() < 3) out["warning"] = kNoTriads;
  return out;
}

io::json run_priority(const io::MatrixDocument& doc, const std::optional<Vector>& weights, bool repair) {
  const PCMatrix m = io::to_pc_matrix(doc, repair);
  const bool weighted = weights.has_value();
  const PriorityVector v = weighted ? weighted_gm_priority(m, WeightVector(*weights)) : gmm_priority(m);
  const io::PriorityTriple p = io::PriorityTriple::from(v);
  io::json out{{"n", m.size()},
               {"method", weighted ? "weighted_geometric_mean" : "geometric_mean"},
               {"priority",
                {{"geometric_mean_one", io::vector_to_json(p.geometric_mean_one)},
                 {"first_coordinate_one", io::vector_to_json(p.first_coordinate_one)},
                 {"sum_one", io::vector_to_json(p.sum_one)}}}};
  if (weighted) out["weights"] = io::vector_to_json(*weights);
  return out;
}

io::json run_check(const io::MatrixDocument& doc) {
  const Matrix logs = doc.logs();
  const Index n = logs.rows();
  const Matrix drift = logs + logs.transpose();
  const double max_drift = drift.cwiseAbs().maxCoeff();
  const AdditiveMatrix sym(0.5 * (logs - logs.transpose()));
  const double deviation = max_triad_deviation(sym);
  const bool reciprocal = max_drift <= kReciprocityTol;
  return io::json{{"n", n},
                  {"domain", doc.domain == Domain::Multiplicative ? "multiplicative" : "additive"},
                  {"reciprocal", reciprocal},
                  {"max_reciprocity_drift", max_drift},
                  {"max_diagonal_log", logs.diagonal().cwiseAbs().maxCoeff()},
                  {"consistent", reciprocal && deviation <= kConsistencyTol},
                  {"max_triad_deviation", deviation},
                  {"triad_count", static_cast<Index>(triads(n).size())},
                  {"kii", kii(sym)}};
}

io::MatrixDocument run_generate(Index n, double noise, std::uint64_t seed, double spread, bool log_encoding) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "--n must be >= 2");
  if (!(noise >= 0.0)) throw Error(ErrorCode::InvalidArgument, "--noise must be >= 0");
  MatrixGenerator gen(seed);
  if (log_encoding) {
    io::MatrixDocument doc = io::make_document(gen.noisy_additive(n, noise, spread));
    doc.domain = Domain::Multiplicative;
    doc.log_encoded.setConstant(true);
    return doc;
  }
  return io::make_document(gen.noisy_pc(n, noise, spread));
}

io::json run_compare(const io::MatrixDocument& doc, const std::vector<io::InnerProductDocument>& products,
                     bool repair) {
  if (products.empty()) throw Error(ErrorCode::InvalidArgument, "compare needs at least one inner product");
  const AdditiveMatrix a = io::to_additive(doc, repair);
  const ValidatedSpec frobenius = validate(Frobenius{});
  io::json rows = io::json::array();
  std::optional<ProjectionResult> first;
  for (const io::InnerProductDocument& product : products) {
    const ValidatedSpec spec = validate(product.spec);
    ProjectionResult p = project(a, gram_schmidt(canonical_basis(a.size()), spec));
    io::json row{{"name", product.name},
                 {"kind", spec.kind()},
                 {"coefficients", p.coefficients},
                 {"priority", io::vector_to_json(p.priority.normalized(Normalization::GeometricMeanOne).weights())},
                 {"residual_distance", p.residual_distance},
                 {"frobenius_residual", distance(frobenius, a.entries(), p.additive_projection.entries())}};
    if (first) {
      Vector d = p.priority.log_weights() - first->priority.log_weights();
      d.array() -= d.mean();
      row["priority_log_divergence"] = d.cwiseAbs().maxCoeff();
      row["same_priority"] = equal_up_to_scaling(p.priority, first->priority, 1e-10);
      row["projection_max_difference"] =
          (p.additive_projection.entries() - first->additive_projection.entries()).cwiseAbs().maxCoeff();
    } else {
      row["priority_log_divergence"] = 0.0;
      row["same_priority"] = true;
      row["projection_max_difference"] = 0.0;
      first = std::move(p);
    }
    rows.push_back(std::move(row));
  }
  return io::json{{"n", a.size()}, {"gmm_priority", io::vector_to_json(gmm_priority(exp_transform(a)).weights())},
                  {"products", std::move(rows)}};
}

std::string render_report(const io::RunReport& r) {
  std::ostringstream out;
  out << "source:            " << r.source << '\n';
  out << "n:                 " << r.n << '\n';
  out << "inner product:     " << r.inner_product_kind << (r.inner_product_name.empty() ? "" : " (" + r.inner_product_name + ")")
      << '\n';
  out << "method:            " << r.method << '\n';
  out << "kii before/after:  " << fmt(r.kii_before) << " / " << fmt(r.kii_after) << '\n';
  if (r.warning) out << "warning:           " << *r.warning << '\n';
  if (!r.coefficients.empty()) {
    out << "coefficients:      "
        << fmt(Eigen::Map<const Vector>(r.coefficients.data(), static_cast<Index>(r.coefficients.size()))) << '\n';
  }
  out << "residual distance: " << fmt(r.residual_distance) << '\n';
  out << "priority (gm = 1): " << fmt(r.priority.geometric_mean_one) << '\n';
  out << "priority (w1 = 1): " << fmt(r.priority.first_coordinate_one) << '\n';
  out << "priority (sum 1):  " << fmt(r.priority.sum_one) << '\n';
  out << "additive projection:\n";
  render_matrix(out, r.additive_projection);
  out << "multiplicative projection:\n";
  render_matrix(out, r.multiplicative_projection);
  if (r.solver) {
    const io::SolverSummary& s = *r.solver;
    out << "solver:            " << (s.converged ? "converged" : "DID NOT CONVERGE") << " after " << s.iterations
        << " iterations, g = " << fmt(s.objective_value) << ", |grad| = " << fmt(s.gradient_max_norm) << '\n';
  }
  return out.str();
}

std::string render_json(const io::json& value) {
  // Round floating-point leaves to 6 significant digits for display.
  const auto round = [](const io::json& v, const auto& self) -> io::json {
    if (v.is_number_float()) return std::stod(fmt(v.get<double>()));
    if (v.is_array() || v.is_object()) {
      io::json out = v;
      for (auto it = out.begin(); it != out.end(); ++it) *it = self(*it, self);
      return out;
    }
    return v;
  };
  return round(value, round).dump(2);
}

}  // namespace pcc::cli
