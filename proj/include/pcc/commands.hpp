#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcc/io.hpp"
#include "pcc/nonlinear_projection.hpp"

namespace pcc::cli {

enum class Method { GramSchmidt, ClosedForm, Newton };

Method parse_method(std::string_view name);
std::string_view method_name(Method m);

struct ProjectRequest {
  io::MatrixDocument matrix;
  std::string source;
  io::InnerProductDocument product{"", Frobenius{}};
  Method method = Method::GramSchmidt;
  bool repair = false;
  SolverOptions solver;
};

io::RunReport run_project(const ProjectRequest& req);

// 0 on success, 3 when the Newton solver did not converge.
int exit_code(const io::RunReport& report);

io::json run_kii(const io::MatrixDocument& doc, bool repair);
io::json run_priority(const io::MatrixDocument& doc, const std::optional<Vector>& weights, bool repair);
io::json run_check(const io::MatrixDocument& doc);
io::MatrixDocument run_generate(Index n, double noise, std::uint64_t seed, double spread, bool log_encoding);

/// Projects one matrix under each product and tabulates priority divergence
/// and distances against the first product.
io::json run_compare(const io::MatrixDocument& doc, const std::vector<io::InnerProductDocument>& products,
                     bool repair);

// Plain-text renderings for --human, numbers rounded to 6 significant digits.
std::string render_report(const io::RunReport& report);
std::string render_json(const io::json& value);

}  // namespace pcc::cli
