#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "pcc/commands.hpp"
#include "pcc/random.hpp"

using namespace pcc;
using fixtures::code_of;
using io::json;

namespace {

const std::string kData = PCC_TEST_DATA;

struct Run {
  int status;
  std::string out;
};

// Runs the CLI binary, capturing stdout.
Run pcc_cli(const std::string& args) {
  const std::string cmd = std::string(PCC_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

cli::ProjectRequest example_request() {
  cli::ProjectRequest req;
  req.matrix = io::load_matrix(kData + "/example3.json");
  req.source = "example3.json";
  return req;
}

}  // namespace

TEST_CASE("method names") {
  for (auto m : {cli::Method::GramSchmidt, cli::Method::ClosedForm, cli::Method::Newton}) {
    CHECK(cli::parse_method(cli::method_name(m)) == m);
  }
  CHECK(code_of([] { cli::parse_method("simplex"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("project under Frobenius") {
  const io::RunReport r = cli::run_project(example_request());
  REQUIRE(r.coefficients.size() == 2);
  CHECK(r.coefficients[0] == doctest::Approx(4.5));
  CHECK(r.coefficients[1] == doctest::Approx(11.0 / 3));
  CHECK(r.kii_before == doctest::Approx(1.0 - std::exp(-2.0)));
  CHECK(r.kii_after < 1e-12);
  CHECK(r.inner_product_kind == "frobenius");
  CHECK((r.additive_projection - fixtures::example_frobenius_projection()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.priority.sum_one.sum() == doctest::Approx(1.0));
  CHECK(cli::exit_code(r) == 0);
}

TEST_CASE("project under the dense trace form") {
  cli::ProjectRequest req = example_request();
  req.product = io::load_inner_product(kData + "/trace_dense.json");
  const io::RunReport r = cli::run_project(req);
  CHECK(r.coefficients[0] == doctest::Approx(71.0 / 13));
  CHECK(r.inner_product_name == "dense");

  req.method = cli::Method::ClosedForm;
  CHECK(code_of([&] { cli::run_project(req); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("closed form and Newton methods") {
  cli::ProjectRequest req = example_request();
  req.product = io::load_inner_product(kData + "/weighted_211.json");
  const io::RunReport gs = cli::run_project(req);
  req.method = cli::Method::ClosedForm;
  const io::RunReport cf = cli::run_project(req);
  CHECK((gs.additive_projection - cf.additive_projection).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(cf.residual_distance == doctest::Approx(gs.residual_distance));

  req.method = cli::Method::Newton;
  const io::RunReport nt = cli::run_project(req);
  REQUIRE(nt.solver.has_value());
  CHECK(nt.solver->converged);
  CHECK(cli::exit_code(nt) == 0);
  CHECK(nt.kii_after < 1e-9);

  req.product = {"", WeightedFrobenius{Vector::Ones(4)}};
  CHECK(code_of([&] { cli::run_project(req); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("consistent input is left alone") {
  cli::ProjectRequest req;
  req.matrix = io::load_matrix(kData + "/consistent.csv");
  const io::RunReport r = cli::run_project(req);
  CHECK(r.residual_distance < 1e-12);
  CHECK((r.multiplicative_projection - req.matrix.values()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kii, priority, check and generate") {
  const io::MatrixDocument doc = io::load_matrix(kData + "/example3.json");
  const json k = cli::run_kii(doc, false);
  CHECK(k["kii"].get<double>() == doctest::Approx(0.864665).epsilon(1e-6));
  CHECK(k["triads"][0]["triad"] == json::array({1, 2, 3}));

  const json p = cli::run_priority(doc, std::nullopt, false);
  const Vector gm = io::vector_from_json_array(p["priority"]["geometric_mean_one"], "gm");
  CHECK((gm.array().log() - fixtures::example_potentials().array()).abs().maxCoeff() < 1e-12);

  const json c = cli::run_check(io::load_matrix(kData + "/nonreciprocal.json"));
  CHECK_FALSE(c["reciprocal"].get<bool>());
  CHECK(cli::run_check(io::load_matrix(kData + "/consistent.csv"))["consistent"].get<bool>());

  const io::MatrixDocument g = cli::run_generate(4, 0.0, 5, kDefaultLogSpread, false);
  CHECK(cli::run_kii(g, false)["kii"].get<double>() < 1e-12);
  CHECK(cli::run_generate(6, 0.3, 8, kDefaultLogSpread, false) == cli::run_generate(6, 0.3, 8, kDefaultLogSpread, false));
  CHECK_FALSE(cli::run_generate(6, 0.3, 8, kDefaultLogSpread, false) == cli::run_generate(6, 0.3, 9, kDefaultLogSpread, false));
  CHECK(code_of([] { cli::run_generate(1, 0.0, 0, kDefaultLogSpread, false); }) == ErrorCode::DimensionTooSmall);
  CHECK(code_of([] { cli::run_generate(3, -1.0, 0, kDefaultLogSpread, false); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("compare tabulates divergence between products") {
  const io::MatrixDocument doc = io::load_matrix(kData + "/example3.json");
  const json out = cli::run_compare(doc,
                                    {{"frobenius", Frobenius{}},
                                     io::load_inner_product(kData + "/trace_dense.json"),
                                     io::load_inner_product(kData + "/trace_diagonal.json")},
                                    false);
  const json& rows = out["products"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[1]["projection_max_difference"].get<double>() > 0.1);
  CHECK_FALSE(rows[1]["same_priority"].get<bool>());
  CHECK(rows[2]["projection_max_difference"].get<double>() < 1e-12);
  CHECK(rows[2]["same_priority"].get<bool>());
}

TEST_CASE("CLI end to end") {
  const std::string ex = kData + "/example3.json";
  Run r = pcc_cli("project " + ex + " --frobenius");
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["coefficients"][0].get<double>() == doctest::Approx(4.5));

  r = pcc_cli("project " + ex + " --product " + kData + "/trace_dense.json --human");
  CHECK(r.status == 0);
  CHECK(r.out.find("trace_form") != std::string::npos);

  CHECK(pcc_cli("project " + ex + " --method newton --max-iter 1").status == 3);
  CHECK(pcc_cli("project " + kData + "/nonreciprocal.json").status == 2);
  CHECK(pcc_cli("project " + kData + "/nonreciprocal.json --repair").status == 0);
  CHECK(pcc_cli("project " + ex + " --weights 1 2").status == 2);
  CHECK(pcc_cli("project " + ex + " --frobenius --weights 1 2 3").status == 2);
  CHECK(pcc_cli("frobnicate").status == 2);

  r = pcc_cli("kii " + ex);
  CHECK(json::parse(r.out)["kii"].get<double>() == doctest::Approx(0.864665).epsilon(1e-6));

  const Run g1 = pcc_cli("generate --n 5 --noise 0.2 --seed 3");
  const Run g2 = pcc_cli("generate --n 5 --noise 0.2 --seed 3");
  CHECK(g1.status == 0);
  CHECK(g1.out == g2.out);

  r = pcc_cli("project --batch " + kData);
  // product documents and the non-reciprocal matrix are reported inline
  CHECK(r.status == 2);
  const json batch = json::parse(r.out);
  CHECK(batch.size() == 7);
  int ok = 0;
  for (const json& item : batch) ok += item.contains("error") ? 0 : 1;
  CHECK(ok == 3);
}
