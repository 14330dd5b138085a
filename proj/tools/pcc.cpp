// pcc: consistent approximations of pairwise-comparison matrices.
//
//   pcc project  MATRIX [--frobenius | --weights w... | --product FILE] [--method M] [--human]
//   pcc kii      MATRIX
//   pcc priority MATRIX [--weights w...]
//   pcc check    MATRIX
//   pcc generate --n N [--noise D] [--seed S]
//   pcc compare  MATRIX PRODUCT... [--frobenius]
//
// Exit status: 0 success, 2 parse/validation error, 3 solver did not converge.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pcc/commands.hpp"
#include "pcc/io.hpp"
#include "pcc/random.hpp"

namespace fs = std::filesystem;
using pcc::io::json;

namespace {

constexpr int kExitInvalid = 2;

void emit(const json& value, bool human) {
  std::cout << (human ? pcc::cli::render_json(value) : value.dump(2)) << '\n';
}

pcc::io::InnerProductDocument choose_product(const std::string& product_file, const std::vector<double>& weights) {
  if (!product_file.empty()) return pcc::io::load_inner_product(product_file);
  if (!weights.empty()) {
    return {"", pcc::WeightedFrobenius{Eigen::Map<const pcc::Vector>(weights.data(), static_cast<pcc::Index>(weights.size()))}};
  }
  return {"", pcc::Frobenius{}};
}

std::vector<fs::path> batch_inputs(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".json" || ext == ".csv")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistent approximation of pairwise-comparison matrices"};
  app.require_subcommand(1);

  bool human = false;
  bool repair = false;

  // project
  auto* project = app.add_subcommand("project", "Project a matrix onto the consistent set");
  std::string project_matrix;
  std::string product_file;
  std::vector<double> project_weights;
  bool frobenius = false;
  std::string method = "gram-schmidt";
  std::string batch_dir;
  pcc::SolverOptions solver;
  project->add_option("matrix", project_matrix, "Matrix document (.json or .csv)");
  auto* product_opt = project->add_option("--product", product_file, "Inner product document");
  auto* weights_opt = project->add_option("--weights", project_weights, "Weighted Frobenius weights rho_1..rho_n");
  auto* frob_opt = project->add_flag("--frobenius", frobenius, "Frobenius inner product (default)");
  product_opt->excludes(weights_opt)->excludes(frob_opt);
  weights_opt->excludes(frob_opt);
  project->add_option("--method", method, "gram-schmidt | closed-form | newton")
      ->check(CLI::IsMember({"gram-schmidt", "closed-form", "newton"}));
  project->add_option("--batch", batch_dir, "Project every .json/.csv matrix in a directory")->check(CLI::ExistingDirectory);
  project->add_option("--tol-grad", solver.tol_grad, "Newton gradient tolerance");
  project->add_option("--max-iter", solver.max_iter, "Newton iteration limit");
  project->add_option("--multistart", solver.multistart_count, "Extra randomized Newton starts");
  project->add_option("--seed", solver.rng_seed, "Seed for --multistart");
  project->add_flag("--human", human, "Readable output, numbers rounded to 6 digits");
  project->add_flag("--repair", repair, "Make the input reciprocal by geometric means before use");

  // kii
  auto* kii = app.add_subcommand("kii", "Kii inconsistency index with per-triad breakdown");
  std::string kii_matrix;
  kii->add_option("matrix", kii_matrix)->required();
  kii->add_flag("--human", human);
  kii->add_flag("--repair", repair);

  // priority
  auto* priority = app.add_subcommand("priority", "Geometric-mean priority vector, optionally weighted");
  std::string priority_matrix;
  std::vector<double> priority_weights;
  priority->add_option("matrix", priority_matrix)->required();
  priority->add_option("--weights", priority_weights, "Weights rho_1..rho_n");
  priority->add_flag("--human", human);
  priority->add_flag("--repair", repair);

  // check
  auto* check = app.add_subcommand("check", "Reciprocity and consistency diagnostics");
  std::string check_matrix;
  check->add_option("matrix", check_matrix)->required();
  check->add_flag("--human", human);

  // generate
  auto* generate = app.add_subcommand("generate", "Random reciprocal matrix near a consistent one");
  pcc::Index gen_n = 0;
  double gen_noise = 0.0;
  std::uint64_t gen_seed = 0;
  double gen_spread = pcc::kDefaultLogSpread;
  bool gen_log = false;
  bool gen_csv = false;
  generate->add_option("--n", gen_n, "Dimension")->required();
  generate->add_option("--noise", gen_noise, "Half-width d of the log-uniform perturbation");
  generate->add_option("--seed", gen_seed, "Random seed");
  generate->add_option("--spread", gen_spread, "Half-width of ln(omega) (default ln 9)");
  generate->add_flag("--log", gen_log, "Emit entries as {\"log\": x}");
  generate->add_flag("--csv", gen_csv, "Emit CSV instead of JSON");

  // compare
  auto* compare = app.add_subcommand("compare", "Compare projections under several inner products");
  std::string compare_matrix;
  std::vector<std::string> compare_products;
  bool compare_frobenius = false;
  compare->add_option("matrix", compare_matrix)->required();
  compare->add_option("products", compare_products, "Inner product documents");
  compare->add_flag("--frobenius", compare_frobenius, "Prepend the Frobenius product as the baseline");
  compare->add_flag("--human", human);
  compare->add_flag("--repair", repair);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*project) {
      pcc::cli::ProjectRequest req;
      req.product = choose_product(product_file, project_weights);
      req.method = pcc::cli::parse_method(method);
      req.repair = repair;
      req.solver = solver;
      if (!batch_dir.empty()) {
        json all = json::array();
        int status = 0;
        for (const fs::path& file : batch_inputs(batch_dir)) {
          try {
            req.matrix = pcc::io::load_matrix(file);
            req.source = file.string();
            const pcc::io::RunReport r = pcc::cli::run_project(req);
            status = std::max(status, pcc::cli::exit_code(r));
            all.push_back(pcc::io::to_json(r));
          } catch (const pcc::Error& e) {
            status = std::max(status, kExitInvalid);
            all.push_back({{"input", {{"source", file.string()}}}, {"error", e.what()}});
          }
        }
        emit(all, human);
        return status;
      }
      if (project_matrix.empty()) throw pcc::Error(pcc::ErrorCode::InvalidArgument, "project needs a MATRIX or --batch DIR");
      req.matrix = pcc::io::load_matrix(project_matrix);
      req.source = project_matrix;
      const pcc::io::RunReport r = pcc::cli::run_project(req);
      if (human) {
        std::cout << pcc::cli::render_report(r);
      } else {
        std::cout << pcc::io::to_json(r).dump(2) << '\n';
      }
      return pcc::cli::exit_code(r);
    }
    if (*kii) {
      emit(pcc::cli::run_kii(pcc::io::load_matrix(kii_matrix), repair), human);
    } else if (*priority) {
      std::optional<pcc::Vector> w;
      if (!priority_weights.empty()) {
        w = Eigen::Map<const pcc::Vector>(priority_weights.data(), static_cast<pcc::Index>(priority_weights.size()));
      }
      emit(pcc::cli::run_priority(pcc::io::load_matrix(priority_matrix), w, repair), human);
    } else if (*check) {
      emit(pcc::cli::run_check(pcc::io::load_matrix(check_matrix)), human);
    } else if (*generate) {
      const pcc::io::MatrixDocument doc = pcc::cli::run_generate(gen_n, gen_noise, gen_seed, gen_spread, gen_log);
      if (gen_csv) {
        std::cout << pcc::io::to_csv(doc);
      } else {
        std::cout << pcc::io::to_json(doc).dump(2) << '\n';
      }
    } else if (*compare) {
      std::vector<pcc::io::InnerProductDocument> products;
      if (compare_frobenius) products.push_back({"frobenius", pcc::Frobenius{}});
      for (const std::string& p : compare_products) products.push_back(pcc::io::load_inner_product(p));
      emit(pcc::cli::run_compare(pcc::io::load_matrix(compare_matrix), products, repair), human);
    }
  } catch (const pcc::Error& e) {
    std::cerr << "pcc: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
