#pragma once

// Geodesic stability experiment and interpolation-table plumbing behind the
// command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cholspace/cholesky_manifold.hpp"
#include "cholspace/random.hpp"
#include "cholspace/spd_manifold.hpp"

namespace cholspace {

enum class StabilityMetric { CM, DEM, DGBWM };

std::string to_string(StabilityMetric m);
/// Parses "CM", "DEM" or "DGBWM"; throws ParseError.
StabilityMetric parse_stability_metric(const std::string& text);

/// How the degenerate diagonal slot is filled.
enum class EpsJitter {
  None,        // exactly eps
  HalfNormal,  // eps * |z|, z ~ N(0, 1)
};

struct StabilityConfig {
  Index n = 3;
  int trials = 1000;
  std::vector<double> eps_list{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-10, 1e-15};
  std::vector<double> theta_list{0.5, 1.5};
  std::vector<StabilityMetric> metrics{StabilityMetric::CM, StabilityMetric::DEM,
                                       StabilityMetric::DGBWM};
  std::uint64_t seed = 0;
  double t_eval = 1.0;
  EpsJitter jitter = EpsJitter::HalfNormal;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// Throws ConfigError.
  void validate() const;
};

struct FailureCell {
  StabilityMetric metric = StabilityMetric::CM;
  std::optional<double> theta;  // empty for CM
  double eps = 0.0;
  int trials = 0;
  int failures = 0;
  std::optional<int> first_failing_trial;

  double rate() const { return trials == 0 ? 0.0 : 100.0 * failures / trials; }
};

struct FailureReport {
  std::vector<FailureCell> cells;

  const FailureCell* find(StabilityMetric metric, std::optional<double> theta, double eps) const;
};

struct RandomInstance {
  CholeskyPoint L;
  LowerTriTangent X;
};

/// L: strict-lower entries uniform in magnitude on [0, 1] with a fair-coin
/// sign, diagonal uniform on (0, 1]. X: same for the strict-lower part, and a
/// nonnegative uniform diagonal on [0, 1].
RandomInstance gen_random_instance(Index n, Rng& rng);

/// Replaces the smallest diagonal entry (lowest index on ties) with `value`.
CholeskyPoint set_min_diag(const CholeskyPoint& L, double value);

bool all_finite(const CholeskyPoint& L);

/// Raw-mode geodesic at t_eval for every (metric, θ, eps) cell; a trial
/// fails when the output holds any Inf or NaN. Deterministic in the seed and
/// independent of the thread count.
FailureReport stability_experiment(const StabilityConfig& config);

/// Per-trial random stream: hash of (seed, metric, θ bits, eps bits, trial).
std::uint64_t trial_seed(std::uint64_t seed, StabilityMetric metric, double theta, double eps,
                         int trial);

// Text formats ---------------------------------------------------------------

/// CSV with header "metric,theta,eps,t,value"; value is the failure rate in
/// percent.
std::string stability_csv(const FailureReport& report, double t_eval);
/// Same header; one line per (kind, t) with the determinant as value.
std::string interpolation_csv(const std::vector<InterpolationRow>& rows);

struct InterpolationInput {
  SpdPoint P;
  SpdPoint Q;
};

/// {"n": int, "P": [[...]], "Q": [[...]]}, row-major. Throws ParseError for
/// malformed documents and NotPositiveDefinite for bad matrices.
InterpolationInput parse_interpolation_input(const std::string& text);

}  // namespace cholspace
