#include "cholspace/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace cholspace {

std::string to_string(StabilityMetric m) {
  switch (m) {
    case StabilityMetric::CM: return "CM";
    case StabilityMetric::DEM: return "DEM";
    case StabilityMetric::DGBWM: return "DGBWM";
  }
  return "?";
}

StabilityMetric parse_stability_metric(const std::string& text) {
  if (text == "CM") return StabilityMetric::CM;
  if (text == "DEM") return StabilityMetric::DEM;
  if (text == "DGBWM") return StabilityMetric::DGBWM;
  throw GeometryError(ErrorCode::ParseError, "unknown metric '" + text + "'");
}

void StabilityConfig::validate() const {
  auto fail = [](const std::string& msg) { throw GeometryError(ErrorCode::ConfigError, msg); };
  if (n < 1) fail("n must be >= 1");
  if (trials < 1) fail("trials must be >= 1");
  if (eps_list.empty()) fail("eps list is empty");
  for (double e : eps_list) {
    if (!(e > 0.0)) fail("eps values must be positive");
  }
  if (metrics.empty()) fail("metric list is empty");
  const bool needs_theta =
      std::any_of(metrics.begin(), metrics.end(),
                  [](StabilityMetric m) { return m != StabilityMetric::CM; });
  if (needs_theta && theta_list.empty()) fail("theta list is empty");
  for (double th : theta_list) {
    if (th == 0.0 || !std::isfinite(th)) fail("theta values must be finite and nonzero");
  }
  if (!std::isfinite(t_eval)) fail("t must be finite");
}

const FailureCell* FailureReport::find(StabilityMetric metric, std::optional<double> theta,
                                       double eps) const {
  for (const auto& c : cells) {
    if (c.metric == metric && c.eps == eps && c.theta == theta) return &c;
  }
  return nullptr;
}

RandomInstance gen_random_instance(Index n, Rng& rng) {
  auto signed_unit = [&rng] {
    const double mag = uniform01(rng);
    return (rng() & 1U) ? mag : -mag;
  };
  Matrix l = Matrix::Zero(n, n);
  Matrix x = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      l(i, j) = signed_unit();
      x(i, j) = signed_unit();
    }
  }
  for (Index i = 0; i < n; ++i) {
    l(i, i) = 1.0 - uniform01(rng);
    x(i, i) = uniform01(rng);
  }
  return {CholeskyPoint(LowerTriangular(l)), LowerTriangular(x)};
}

CholeskyPoint set_min_diag(const CholeskyPoint& L, double value) {
  Matrix m = L.matrix();
  Index arg = 0;
  for (Index i = 1; i < m.rows(); ++i) {
    if (m(i, i) < m(arg, arg)) arg = i;
  }
  m(arg, arg) = value;
  return CholeskyPoint(LowerTriangular(m), Mode::Raw);
}

bool all_finite(const CholeskyPoint& L) { return L.matrix().allFinite(); }

std::uint64_t trial_seed(std::uint64_t seed, StabilityMetric metric, double theta, double eps,
                         int trial) {
  return stream_seed({seed, static_cast<std::uint64_t>(metric), std::bit_cast<std::uint64_t>(theta),
                      std::bit_cast<std::uint64_t>(eps), static_cast<std::uint64_t>(trial)});
}

namespace {

CholeskyMetricSpec raw_spec(StabilityMetric metric, double theta) {
  switch (metric) {
    case StabilityMetric::CM: return CholeskyMetricSpec::cm(Mode::Raw);
    case StabilityMetric::DEM: return CholeskyMetricSpec::dem(theta, Mode::Raw);
    case StabilityMetric::DGBWM: return CholeskyMetricSpec::dgbwm(theta, std::nullopt, Mode::Raw);
  }
  return CholeskyMetricSpec::cm(Mode::Raw);
}

struct Tally {
  int failures = 0;
  int first = std::numeric_limits<int>::max();
};

Tally run_range(const StabilityConfig& cfg, StabilityMetric metric, double theta, double eps,
                int begin, int end) {
  const CholeskyMetricSpec spec = raw_spec(metric, theta);
  Tally tally;
  for (int trial = begin; trial < end; ++trial) {
    Rng rng(trial_seed(cfg.seed, metric, theta, eps, trial));
    RandomInstance inst = gen_random_instance(cfg.n, rng);
    double slot = eps;
    if (cfg.jitter == EpsJitter::HalfNormal) {
      // Fresh per trial: the distribution caches a second variate.
      std::normal_distribution<double> normal;
      slot = eps * std::abs(normal(rng));
    }
    const CholeskyPoint L = set_min_diag(inst.L, slot);
    if (!all_finite(geodesic(spec, L, inst.X, cfg.t_eval))) {
      ++tally.failures;
      tally.first = std::min(tally.first, trial);
    }
  }
  return tally;
}

FailureCell run_cell(const StabilityConfig& cfg, StabilityMetric metric,
                     std::optional<double> theta, double eps, unsigned threads) {
  const double th = theta.value_or(0.0);
  const int chunks = static_cast<int>(std::min<unsigned>(threads, cfg.trials));
  std::vector<Tally> tallies(chunks);
  std::vector<std::thread> workers;
  for (int c = 0; c < chunks; ++c) {
    const int begin = static_cast<int>(static_cast<long long>(cfg.trials) * c / chunks);
    const int end = static_cast<int>(static_cast<long long>(cfg.trials) * (c + 1) / chunks);
    workers.emplace_back(
        [&, c, begin, end] { tallies[c] = run_range(cfg, metric, th, eps, begin, end); });
  }
  for (auto& w : workers) w.join();

  FailureCell cell;
  cell.metric = metric;
  cell.theta = theta;
  cell.eps = eps;
  cell.trials = cfg.trials;
  int first = std::numeric_limits<int>::max();
  for (const auto& t : tallies) {
    cell.failures += t.failures;
    first = std::min(first, t.first);
  }
  if (cell.failures > 0) cell.first_failing_trial = first;
  return cell;
}

}  // namespace

FailureReport stability_experiment(const StabilityConfig& config) {
  config.validate();
  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());

  FailureReport report;
  for (double eps : config.eps_list) {
    for (StabilityMetric metric : config.metrics) {
      if (metric == StabilityMetric::CM) {
        report.cells.push_back(run_cell(config, metric, std::nullopt, eps, threads));
        continue;
      }
      for (double theta : config.theta_list) {
        report.cells.push_back(run_cell(config, metric, theta, eps, threads));
      }
    }
  }
  return report;
}

// Text formats ---------------------------------------------------------------

std::string stability_csv(const FailureReport& report, double t_eval) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "metric,theta,eps,t,value\n";
  for (const auto& c : report.cells) {
    os << to_string(c.metric) << ',';
    if (c.theta) os << *c.theta;
    os << ',' << c.eps << ',' << t_eval << ',' << c.rate() << '\n';
  }
  return os.str();
}

std::string interpolation_csv(const std::vector<InterpolationRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "metric,theta,eps,t,value\n";
  for (const auto& row : rows) {
    std::string metric = row.name;
    std::string theta;
    if (const auto dash = metric.find('-'); dash != std::string::npos) {
      theta = metric.substr(0, dash);
      metric = metric.substr(dash + 1);
    }
    for (std::size_t i = 0; i < row.t.size(); ++i) {
      os << metric << ',' << theta << ",," << row.t[i] << ',' << row.determinant[i] << '\n';
    }
  }
  return os.str();
}

namespace {

Matrix read_matrix(const nlohmann::json& doc, const char* key, Index n) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw GeometryError(ErrorCode::ParseError, std::string("missing matrix '") + key + "'");
  }
  const auto& rows = doc[key];
  if (static_cast<Index>(rows.size()) != n) {
    throw GeometryError(ErrorCode::ParseError, std::string("matrix '") + key + "' needs n rows");
  }
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw GeometryError(ErrorCode::ParseError, std::string("matrix '") + key + "' row size");
    }
    for (Index j = 0; j < n; ++j) {
      if (!row[j].is_number()) {
        throw GeometryError(ErrorCode::ParseError, std::string("non-numeric entry in ") + key);
      }
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

}  // namespace

InterpolationInput parse_interpolation_input(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GeometryError(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw GeometryError(ErrorCode::ParseError, "document needs an integer field 'n'");
  }
  const Index n = doc["n"].get<Index>();
  if (n < 1) throw GeometryError(ErrorCode::ParseError, "'n' must be positive");
  return {SpdPoint(read_matrix(doc, "P", n)), SpdPoint(read_matrix(doc, "Q", n))};
}

}  // namespace cholspace
