#pragma once

// One-dimensional metrics on the positive half-line. Each Cholesky-manifold
// metric is the flat metric on the strictly lower part times n copies of one
// of these, so every manifold operator reduces to the scalar ones below.

#include <span>

#include "cholspace/errors.hpp"

namespace cholspace {

enum class LineFamily {
  AffineInvariant,  // p^-2 v w
  PowerEuclidean,   // p^{2(θ-1)} v w
  GeneralizedBW,    // p^{θ-2} v w / (4m); θ = 1 is the undeformed metric
};

struct LineMetric {
  LineFamily family = LineFamily::AffineInvariant;
  double theta = 1.0;
  double m = 1.0;

  static LineMetric affine_invariant();
  /// Throws ZeroTheta for θ = 0.
  static LineMetric power_euclidean(double theta);
  /// Throws ZeroTheta for θ = 0 and DomainError for m <= 0.
  static LineMetric generalized_bw(double m, double theta = 1.0);

  /// Same metric with the GBW weight replaced; other families ignore it.
  LineMetric with_weight(double weight) const;
  /// Metric whose exp, log and transport coincide with this one. GBW(m, θ)
  /// maps to PE(θ/2); the other families map to themselves.
  LineMetric geodesic_equivalent() const;

  bool operator==(const LineMetric&) const = default;
};

double line_inner(const LineMetric& g, double p, double v, double w, Mode mode = Mode::Checked);

/// True when 1 + tθv/p (power families) stays positive; always true for AI.
bool line_geodesic_defined(const LineMetric& g, double p, double v, double t);

double line_geodesic(const LineMetric& g, double p, double v, double t,
                     Mode mode = Mode::Checked);
inline double line_exp(const LineMetric& g, double p, double v, Mode mode = Mode::Checked) {
  return line_geodesic(g, p, v, 1.0, mode);
}
double line_log(const LineMetric& g, double p, double q, Mode mode = Mode::Checked);
double line_transport(const LineMetric& g, double p, double q, double v,
                      Mode mode = Mode::Checked);
double line_dist(const LineMetric& g, double p, double q, Mode mode = Mode::Checked);
double line_wfm(const LineMetric& g, std::span<const double> weights,
                std::span<const double> points, Mode mode = Mode::Checked);

/// Pullback by p -> p^θ scaled by 1/θ². Closed under every family:
/// AI -> AI, PE(θ0) -> PE(θ0 θ), GBW(m, θ0) -> GBW(m, θ0 θ).
LineMetric deform(const LineMetric& g, double theta);

/// The deformed tensor evaluated generically as g_{p^θ}(p^{θ-1} v, p^{θ-1} w).
/// Used to cross-check the closed forms produced by deform().
double deformed_inner_generic(const LineMetric& base, double theta, double p, double v,
                              double w);

/// Validates a weight vector for Fréchet means (positive, sums to 1 within
/// 1e-12, length matching `count`). Throws BadWeights.
void validate_weights(std::span<const double> weights, std::size_t count);

}  // namespace cholspace
