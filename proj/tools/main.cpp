#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "trl/analysis.hpp"
#include "trl/binary_cubic.hpp"
#include "trl/error.hpp"
#include "trl/ff_oracle.hpp"
#include "trl/generators.hpp"
#include "trl/json_io.hpp"
#include "trl/numeric_rank.hpp"

namespace {

using namespace trl;

constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitField = 4;
constexpr int kExitConvergence = 5;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBudgetExceeded: return kExitBudget;
    case ErrorCode::kUnsupportedField:
    case ErrorCode::kInfiniteField:
    case ErrorCode::kBadCharacteristic: return kExitField;
    case ErrorCode::kDidNotConverge: return kExitConvergence;
    case ErrorCode::kInternal: return 1;
    default: return kExitInput;
  }
}

struct Common {
  std::string input = "-";
  std::string out;
};

Tensor load_tensor(const std::string& path) {
  if (path == "-") return read_tensor(std::cin);
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kParseError, "cannot open " + path);
  return read_tensor(in);
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kParseError, "cannot open " + path);
  return parse_json(in);
}

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream file(out);
  if (!file) fail(ErrorCode::kParseError, "cannot write " + out);
  file << j.dump(2) << '\n';
}

SymTensor require_symmetric(const Tensor& t) {
  if (!is_symmetric(t)) fail(ErrorCode::kNotSymmetric, "input tensor is not symmetric");
  return SymTensor(t);
}

void require_float_or_rational(const Tensor& t, const char* command) {
  if (t.field().is_finite()) {
    fail(ErrorCode::kUnsupportedField, std::string(command) + " needs float64, complex128 or rational input");
  }
}

double difference_norm(const Tensor& a, const Tensor& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double m = (a[i] - b[i]).magnitude();
    s += m * m;
  }
  return std::sqrt(s);
}

std::function<void(long long, long long)> progress_printer(const char* what) {
  auto start = std::make_shared<std::chrono::steady_clock::time_point>(std::chrono::steady_clock::now());
  return [start, what](long long done, long long total) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - *start).count();
    std::cerr << what << ": " << done << "/" << total << " tensors, "
              << static_cast<long long>(secs > 0 ? done / secs : 0.0) << " tensors/sec\n";
  };
}

OracleBudget budget_from(long long cap) {
  OracleBudget budget;
  if (cap > 0) budget.candidate_cap = cap;
  return budget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor rank, symmetric rank and border rank toolkit"};
  app.require_subcommand(1);

  Common common;
  std::optional<double> tol;
  std::string certify_path;
  long long budget_cap = 0;
  std::string field_text = "gf2";
  int d = 3;
  int n = 2;
  std::optional<std::uint64_t> seed;
  int restarts = 16;
  std::vector<double> eps_values{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  std::string theorem_text = "maintheo";
  long long samples = 0;
  double a_param = 0.0;
  std::string name;
  bool no_rank = false;
  bool trajectories = false;

  auto add_io = [&](CLI::App* cmd, bool with_input) {
    if (with_input) cmd->add_option("input", common.input, "Tensor JSON file, - for stdin");
    cmd->add_option("--out", common.out, "Write JSON here instead of stdout");
  };

  auto* analyze = app.add_subcommand("analyze", "Rank report for a tensor");
  add_io(analyze, true);
  analyze->add_option("--tol", tol, "Numerical tolerance");
  analyze->add_option("--certify", certify_path, "Decomposition JSON to certify with Kruskal's test");
  analyze->add_option("--budget", budget_cap, "Candidate cap for exhaustive search");

  auto* decompose = app.add_subcommand("decompose", "Symmetric decomposition of a binary cubic");
  add_io(decompose, true);

  auto* census_cmd = app.add_subcommand("census", "Rank/srank histogram of S^d GF(p)^n");
  add_io(census_cmd, false);
  census_cmd->add_option("--field", field_text, "Finite field tag, e.g. gf3")->required();
  census_cmd->add_option("--d", d, "Order")->required();
  census_cmd->add_option("--n", n, "Dimension")->required();
  census_cmd->add_option("--budget", budget_cap, "Candidate cap for exhaustive search");
  census_cmd->add_flag("--no-rank", no_rank, "Skip the rank column");

  auto* sweep = app.add_subcommand("sweep", "Check a theorem over a finite field");
  add_io(sweep, false);
  sweep->add_option("--theorem", theorem_text, "maintheo | eqcase | rank2eq | rank3symten | rank3case")->required();
  sweep->add_option("--field", field_text, "Finite field tag")->required();
  sweep->add_option("--d", d, "Order")->required();
  sweep->add_option("--n", n, "Dimension")->required();
  sweep->add_option("--samples", samples, "Random samples; 0 means exhaustive");
  sweep->add_option("--seed", seed, "RNG seed (required with --samples)");
  sweep->add_option("--budget", budget_cap, "Candidate cap for exhaustive search");

  auto* approx = app.add_subcommand("approx", "Best symmetric rank-one approximation and Banach check");
  add_io(approx, true);
  approx->add_option("--seed", seed, "RNG seed")->required();
  approx->add_option("--restarts", restarts, "Number of starts");
  approx->add_option("--tol", tol, "Convergence tolerance");
  approx->add_flag("--trajectories", trajectories, "Include per-iteration objective values");

  auto* border = app.add_subcommand("border", "Border-rank-2 detection and epsilon curve");
  add_io(border, true);
  border->add_option("--tol", tol, "Relative residual tolerance");
  border->add_option("--eps", eps_values, "Epsilon values for the approximating curve");

  auto* generate = app.add_subcommand("generate", "Emit a named instance");
  add_io(generate, false);
  generate->add_option("name", name, "z2-counterexample | w-tensor | pencil-example | random-sym")->required();
  generate->add_option("--field", field_text, "Field tag");
  generate->add_option("--d", d, "Order (random-sym)");
  generate->add_option("--n", n, "Dimension (random-sym)");
  generate->add_option("--seed", seed, "RNG seed (random-sym)");
  generate->add_option("--a", a_param, "Parameter a (pencil-example)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (analyze->parsed()) {
      const Tensor t = load_tensor(common.input);
      AnalyzeOptions options;
      options.tol = tol;
      options.budget = budget_from(budget_cap);
      if (!certify_path.empty()) {
        DecompositionFile file = decomposition_from_json(load_json(certify_path));
        if (file.field != t.field() || file.order != t.order() || file.dim != t.dim()) {
          fail(ErrorCode::kShapeMismatch, "decomposition does not match the tensor's shape or field");
        }
        options.certify = std::move(file.decomposition);
      }
      const Analysis result = analyze_tensor(t, options);
      Json j = rank_report_to_json(result.report);
      j["pencil"] = result.pencil ? pencil_to_json(*result.pencil) : Json(nullptr);
      j["border"] = result.border ? border_form_to_json(*result.border) : Json(nullptr);
      std::cerr << "rank_A = " << result.report.rank_A;
      if (result.report.rank) {
        std::cerr << ", rank " << (result.report.rank->lower_bound ? ">= " : "= ") << result.report.rank->value;
      }
      if (result.report.srank) {
        const auto& v = result.report.srank->value;
        std::cerr << ", srank = " << (std::holds_alternative<int>(v) ? std::to_string(std::get<int>(v)) : "NotExpressible");
      }
      std::cerr << '\n';
      emit(j, common.out);
    } else if (decompose->parsed()) {
      const Tensor t = load_tensor(common.input);
      if (t.field().is_float()) fail(ErrorCode::kUnsupportedField, "decompose needs an exact field");
      const SymTensor s = require_symmetric(t);
      const BinaryCubicResult result = decompose_s3f2(s);
      Json j{{"terms", result.decomposition.terms.size()},
             {"decomposition", decomposition_to_json(result.decomposition, 3, 2, t.field())},
             {"trace", trace_to_json(result.trace)}};
      std::cerr << result.decomposition.terms.size() << " terms via " << result.trace.labels().size() << " steps\n";
      emit(j, common.out);
    } else if (census_cmd->parsed()) {
      CensusOptions options;
      options.budget = budget_from(budget_cap);
      options.with_rank = !no_rank;
      options.progress = progress_printer("census");
      const CensusReport report = census(FieldTag::parse(field_text), d, n, options);
      std::cerr << "total " << report.total_symmetric << ", expressible nonzero " << report.expressible_nonzero << '\n';
      emit(census_to_json(report), common.out);
    } else if (sweep->parsed()) {
      if (samples > 0 && !seed) fail(ErrorCode::kParseError, "--seed is required with --samples");
      SweepOptions options;
      options.samples = samples;
      options.seed = seed.value_or(0);
      options.budget = budget_from(budget_cap);
      options.progress = progress_printer("sweep");
      const SweepReport report = theorem_sweep(parse_theorem(theorem_text), FieldTag::parse(field_text), d, n, options);
      std::cerr << report.instances << " instances, " << report.hypothesis_met << " meet the hypothesis, "
                << report.violations.size() << " violations\n";
      emit(sweep_to_json(report), common.out);
    } else if (approx->parsed()) {
      const Tensor t = load_tensor(common.input);
      require_float_or_rational(t, "approx");
      const SymTensor s = require_symmetric(t);
      PowerOptions options;
      options.seed = *seed;
      options.restarts = restarts;
      if (tol) options.tol = *tol;
      options.keep_trajectories = trajectories;
      const BanachReport report = banach_symmetry_check(s, options);
      Json j{{"symmetric", sym_rank1_to_json(report.symmetric, trajectories)}, {"banach", banach_to_json(report)}};
      std::cerr << "symmetric residual " << report.symmetric_residual << ", unconstrained "
                << report.unconstrained_residual << '\n';
      emit(j, common.out);
    } else if (border->parsed()) {
      const Tensor t = load_tensor(common.input);
      require_float_or_rational(t, "border");
      const SymTensor s = require_symmetric(t);
      const auto form = detect_border_rank2(s, tol.value_or(1e-8));
      Json j{{"form", nullptr}, {"residual", nullptr}, {"curve", Json::array()}};
      if (form) {
        j["form"] = border_form_to_json(*form);
        const Tensor approx_t = border_tensor(*form);
        j["residual"] = difference_norm(approx_t, s.tensor());
        const EpsCurve curve = eps_curve(*form);
        for (double eps : eps_values) {
          const Tensor at = reconstruct(eval_eps(curve, eps), form->order, approx_t.dim(), approx_t.field());
          j["curve"].push_back({{"eps", eps},
                                {"error", difference_norm(at, approx_t)},
                                {"expansion", eps_error_expansion(curve, eps)},
                                {"bound", eps_error_bound(curve, eps)}});
        }
        std::cerr << "border-rank-2 form found\n";
      } else {
        std::cerr << "no border-rank-2 form\n";
      }
      emit(j, common.out);
    } else if (generate->parsed()) {
      Tensor t = z2_counterexample();
      const bool field_given = generate->count("--field") > 0;
      if (name == "z2-counterexample") {
        if (field_given && field_text != "gf2") fail(ErrorCode::kUnsupportedField, "z2-counterexample is over gf2");
      } else if (name == "w-tensor") {
        t = w_tensor(FieldTag::parse(field_given ? field_text : "rational")).tensor();
      } else if (name == "pencil-example") {
        t = pencil_example(FieldTag::parse(field_given ? field_text : "float64"), a_param).tensor();
      } else if (name == "random-sym") {
        if (!seed) fail(ErrorCode::kParseError, "--seed is required for random-sym");
        t = random_symmetric(FieldTag::parse(field_given ? field_text : "float64"), d, n, *seed).tensor();
      } else {
        fail(ErrorCode::kParseError, "unknown instance '" + name + "'");
      }
      emit(tensor_to_json(t), common.out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
