#pragma once

// Riemannian operators on the Cholesky manifold for CM, θ-DEM and θ-DGBWM.
// Every operator is the flat formula on the strictly lower part combined
// slotwise with a positive_line operator on the diagonal.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cholspace/linalg.hpp"
#include "cholspace/positive_line.hpp"

namespace cholspace {

struct CholeskyMetricSpec {
  LineMetric line;
  /// Diagonal weight 𝕄 of the GBW family; empty means identity.
  std::optional<PositiveDiag> weights;
  Mode mode = Mode::Checked;

  /// Cholesky metric: log-style geometry on the diagonal.
  static CholeskyMetricSpec cm(Mode mode = Mode::Checked);
  /// θ-DEM; θ = 1 is the Euclidean metric on the Cholesky manifold.
  static CholeskyMetricSpec dem(double theta, Mode mode = Mode::Checked);
  /// θ-DGBWM with weight 𝕄 (identity when omitted).
  static CholeskyMetricSpec dgbwm(double theta = 1.0, std::optional<PositiveDiag> weights = {},
                                  Mode mode = Mode::Checked);

  /// Line metric governing diagonal slot i (𝕄_i folded in for GBW).
  LineMetric slot(Index i) const;
  CholeskyMetricSpec with_mode(Mode m) const;
  /// Human-readable tag such as "CM", "0.5-DEM" or "1.5-DGBWM".
  std::string name() const;
};

double inner(const CholeskyMetricSpec& spec, const CholeskyPoint& L, const LowerTriTangent& X,
             const LowerTriTangent& Y);

/// Slotwise domain predicate of the geodesic through L with velocity X at t.
bool geodesic_defined(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                      const LowerTriTangent& X, double t);

CholeskyPoint geodesic(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                       const LowerTriTangent& X, double t);
CholeskyPoint exp_map(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                      const LowerTriTangent& X);
LowerTriTangent log_map(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                        const CholeskyPoint& K);
/// Parallel transport along the geodesic from L to K.
LowerTriTangent transport(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                          const CholeskyPoint& K, const LowerTriTangent& X);
double dist(const CholeskyMetricSpec& spec, const CholeskyPoint& L, const CholeskyPoint& K);
CholeskyPoint wfm(const CholeskyMetricSpec& spec, std::span<const double> weights,
                  std::span<const CholeskyPoint> points);

/// Diagonal-power deformation of `base` by θ (throws ZeroTheta).
CholeskyMetricSpec deformed_spec(const CholeskyMetricSpec& base, double theta);

/// ⟨⌊X⌋,⌊Y⌋⟩ + g̃_{𝔻L^θ}(𝔻L^{θ-1}𝔻X, 𝔻L^{θ-1}𝔻Y) evaluated with the
/// undeformed `base` line metric.
double deformed_inner_generic(const CholeskyMetricSpec& base, double theta,
                              const CholeskyPoint& L, const LowerTriTangent& X,
                              const LowerTriTangent& Y);

}  // namespace cholspace
