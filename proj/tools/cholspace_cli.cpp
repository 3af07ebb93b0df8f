// cholspace: geodesic stability, interpolation determinants and ad-hoc
// operator evaluation on the Cholesky and SPD manifolds.
//
// Exit codes: 0 success, 2 parse or configuration error, 3 domain error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cholspace/eval.hpp"
#include "cholspace/experiments.hpp"

namespace {

using namespace cholspace;

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_stability_table(const StabilityConfig& cfg, const FailureReport& report) {
  std::cout << "Failure rate (%) of raw geodesics at t = " << cfg.t_eval << ", n = " << cfg.n
            << ", trials = " << cfg.trials << "\n";
  std::cout << std::left << std::setw(10) << "eps";
  for (StabilityMetric m : cfg.metrics) {
    if (m == StabilityMetric::CM) {
      std::cout << std::setw(14) << "CM";
    } else {
      for (double th : cfg.theta_list) {
        std::ostringstream h;
        h << th << "-" << to_string(m);
        std::cout << std::setw(14) << h.str();
      }
    }
  }
  std::cout << "\n";
  for (double eps : cfg.eps_list) {
    std::ostringstream e;
    e << eps;
    std::cout << std::setw(10) << e.str();
    for (StabilityMetric m : cfg.metrics) {
      std::vector<std::optional<double>> thetas;
      if (m == StabilityMetric::CM) {
        thetas.emplace_back(std::nullopt);
      } else {
        thetas.assign(cfg.theta_list.begin(), cfg.theta_list.end());
      }
      for (const auto& th : thetas) {
        const FailureCell* c = report.find(m, th, eps);
        std::ostringstream v;
        v << std::fixed << std::setprecision(2) << (c ? c->rate() : 0.0);
        std::cout << std::setw(14) << v.str();
      }
    }
    std::cout << "\n";
  }
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian geometry on the Cholesky and SPD manifolds"};
  app.require_subcommand(1);

  // stability
  StabilityConfig cfg;
  std::vector<std::string> metric_names{"CM", "DEM", "DGBWM"};
  std::string jitter = "halfnormal";
  std::string csv_path;
  auto* stability = app.add_subcommand("stability", "Failure rates of raw-mode geodesics");
  stability->add_option("--n", cfg.n, "Matrix dimension")->check(CLI::PositiveNumber);
  stability->add_option("--trials", cfg.trials, "Trials per cell")->check(CLI::PositiveNumber);
  stability->add_option("--eps", cfg.eps_list, "Degenerate diagonal magnitudes")
      ->delimiter(',');
  stability->add_option("--theta", cfg.theta_list, "Deformation exponents")->delimiter(',');
  stability->add_option("--metrics", metric_names, "Subset of CM,DEM,DGBWM")->delimiter(',');
  stability->add_option("--seed", cfg.seed, "RNG seed (CHOLSPACE_SEED overrides)");
  stability->add_option("--t", cfg.t_eval, "Geodesic parameter");
  stability->add_option("--eps-jitter", jitter,
                        "Degenerate slot: 'halfnormal' (eps*|N(0,1)|) or 'none' (exactly eps)")
      ->check(CLI::IsMember({"halfnormal", "none"}));
  stability->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  stability->add_option("--csv", csv_path, "Write metric,theta,eps,t,value CSV here");

  // interpolate
  std::string interp_input;
  std::vector<std::string> kinds{"1-EM", "0.5-EM", "0.1-EM", "LEM",      "AIM",
                                 "BWM",  "LCM",    "0.1-CDEM", "0.5-CDEM", "1-CDEM"};
  int steps = 10;
  bool emit_matrices = false;
  auto* interpolate =
      app.add_subcommand("interpolate", "Determinants along geodesics between two SPD matrices");
  interpolate->add_option("--input", interp_input, "JSON with n, P, Q")->required();
  interpolate->add_option("--kinds", kinds, "Geodesic kinds")->delimiter(',');
  interpolate->add_option("--steps", steps, "Number of interpolation points")
      ->check(CLI::Range(2, 1000000));
  interpolate->add_flag("--emit-matrices", emit_matrices,
                        "Emit JSON including the interpolated matrices instead of CSV");

  // eval
  std::string eval_metric;
  std::string eval_op;
  std::string eval_input;
  auto* eval = app.add_subcommand("eval", "Evaluate a single operator on JSON input");
  eval->add_option("--metric", eval_metric, "Metric tag, e.g. CM, 0.5-DEM, 1.5-CDGBWM")
      ->required();
  eval->add_option("--op", eval_op, "Operator name")->required();
  eval->add_option("--input", eval_input, "JSON file ('-' for stdin)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*stability) {
      if (const char* env = std::getenv("CHOLSPACE_SEED")) {
        try {
          cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
          throw GeometryError(ErrorCode::ParseError, "CHOLSPACE_SEED is not an unsigned integer");
        }
      }
      cfg.metrics.clear();
      for (const auto& name : metric_names) cfg.metrics.push_back(parse_stability_metric(name));
      cfg.jitter = jitter == "none" ? EpsJitter::None : EpsJitter::HalfNormal;
      const FailureReport report = stability_experiment(cfg);
      print_stability_table(cfg, report);
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw GeometryError(ErrorCode::ConfigError, "cannot write '" + csv_path + "'");
        out << stability_csv(report, cfg.t_eval);
      }
    } else if (*interpolate) {
      const InterpolationInput in = parse_interpolation_input(read_file(interp_input));
      std::vector<BaselineGeodesic> parsed;
      for (const auto& k : kinds) parsed.push_back(BaselineGeodesic::parse(k));
      const auto rows = interpolation_table(in.P, in.Q, parsed, steps);
      if (!emit_matrices) {
        std::cout << interpolation_csv(rows);
      } else {
        nlohmann::json doc = nlohmann::json::array();
        for (std::size_t r = 0; r < rows.size(); ++r) {
          nlohmann::json mats = nlohmann::json::array();
          for (double t : rows[r].t) {
            mats.push_back(matrix_json(baseline_geodesic(parsed[r], in.P, in.Q, t).matrix()));
          }
          doc.push_back({{"metric", rows[r].name},
                         {"t", rows[r].t},
                         {"determinant", rows[r].determinant},
                         {"matrices", mats}});
        }
        std::cout << doc.dump(2) << "\n";
      }
    } else if (*eval) {
      nlohmann::json input;
      try {
        input = nlohmann::json::parse(read_file(eval_input));
      } catch (const nlohmann::json::parse_error& e) {
        throw GeometryError(ErrorCode::ParseError, e.what());
      }
      std::cout << evaluate_operator(eval_metric, eval_op, input).dump(2) << "\n";
    }
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool usage = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ConfigError;
    return usage ? kExitParse : kExitDomain;
  }
  return 0;
}
