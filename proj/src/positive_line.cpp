#include "cholspace/positive_line.hpp"

#include <cmath>
#include <string>

#include "cholspace/linalg.hpp"

namespace cholspace {

namespace {

void require_positive(double p, const char* what) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw GeometryError(ErrorCode::DomainError,
                        std::string(what) + " must be a finite positive number, got " +
                            std::to_string(p));
  }
}

void require_finite_result(double x, const char* op) {
  if (!std::isfinite(x)) {
    throw GeometryError(ErrorCode::OutOfDomain, std::string(op) + ": non-finite result");
  }
}

}  // namespace

LineMetric LineMetric::affine_invariant() { return {LineFamily::AffineInvariant, 1.0, 1.0}; }

LineMetric LineMetric::power_euclidean(double theta) {
  if (theta == 0.0) throw GeometryError(ErrorCode::ZeroTheta, "power exponent must be nonzero");
  return {LineFamily::PowerEuclidean, theta, 1.0};
}

LineMetric LineMetric::generalized_bw(double m, double theta) {
  if (theta == 0.0) throw GeometryError(ErrorCode::ZeroTheta, "power exponent must be nonzero");
  if (!(m > 0.0)) throw GeometryError(ErrorCode::DomainError, "GBW weight must be positive");
  return {LineFamily::GeneralizedBW, theta, m};
}

LineMetric LineMetric::with_weight(double weight) const {
  if (family != LineFamily::GeneralizedBW) return *this;
  return generalized_bw(weight, theta);
}

LineMetric LineMetric::geodesic_equivalent() const {
  if (family == LineFamily::GeneralizedBW) return {LineFamily::PowerEuclidean, theta / 2.0, 1.0};
  return *this;
}

double line_inner(const LineMetric& g, double p, double v, double w, Mode mode) {
  if (mode == Mode::Checked) require_positive(p, "base point");
  switch (g.family) {
    case LineFamily::AffineInvariant:
      return v * w / (p * p);
    case LineFamily::PowerEuclidean:
      return power(p, 2.0 * (g.theta - 1.0)) * (v * w);
    case LineFamily::GeneralizedBW:
      return power(p, g.theta - 2.0) * (v * w) / (4.0 * g.m);
  }
  return 0.0;
}

bool line_geodesic_defined(const LineMetric& g, double p, double v, double t) {
  const LineMetric e = g.geodesic_equivalent();
  if (e.family == LineFamily::AffineInvariant) return true;
  return 1.0 + t * e.theta * v / p > 0.0;
}

double line_geodesic(const LineMetric& g, double p, double v, double t, Mode mode) {
  const LineMetric e = g.geodesic_equivalent();
  if (mode == Mode::Checked) {
    require_positive(p, "base point");
    if (!line_geodesic_defined(g, p, v, t)) {
      throw GeometryError(ErrorCode::OutOfDomain, "geodesic parameter outside its domain");
    }
  }
  double r = 0.0;
  if (e.family == LineFamily::AffineInvariant) {
    r = p * std::exp(t * v / p);
  } else {
    r = p * power(1.0 + t * e.theta * v / p, 1.0 / e.theta);
  }
  if (mode == Mode::Checked) require_finite_result(r, "geodesic");
  return r;
}

double line_log(const LineMetric& g, double p, double q, Mode mode) {
  if (mode == Mode::Checked) {
    require_positive(p, "base point");
    require_positive(q, "target point");
  }
  const LineMetric e = g.geodesic_equivalent();
  if (e.family == LineFamily::AffineInvariant) return p * std::log(q / p);
  return p * (power(q / p, e.theta) - 1.0) / e.theta;
}

double line_transport(const LineMetric& g, double p, double q, double v, Mode mode) {
  if (mode == Mode::Checked) {
    require_positive(p, "base point");
    require_positive(q, "target point");
  }
  const LineMetric e = g.geodesic_equivalent();
  if (e.family == LineFamily::AffineInvariant) return (q / p) * v;
  return power(q / p, 1.0 - e.theta) * v;
}

double line_dist(const LineMetric& g, double p, double q, Mode mode) {
  if (mode == Mode::Checked) {
    require_positive(p, "first point");
    require_positive(q, "second point");
  }
  switch (g.family) {
    case LineFamily::AffineInvariant:
      return std::abs(std::log(q) - std::log(p));
    case LineFamily::PowerEuclidean:
      return std::abs(power(q, g.theta) - power(p, g.theta)) / std::abs(g.theta);
    case LineFamily::GeneralizedBW: {
      const double h = g.theta / 2.0;
      return std::abs(power(q, h) - power(p, h)) / (std::abs(g.theta) * std::sqrt(g.m));
    }
  }
  return 0.0;
}

void validate_weights(std::span<const double> weights, std::size_t count) {
  if (weights.empty() || weights.size() != count) {
    throw GeometryError(ErrorCode::BadWeights, "need one weight per point");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw GeometryError(ErrorCode::BadWeights, "weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw GeometryError(ErrorCode::BadWeights, "weights must sum to 1");
  }
}

double line_wfm(const LineMetric& g, std::span<const double> weights,
                std::span<const double> points, Mode mode) {
  if (mode == Mode::Checked) {
    validate_weights(weights, points.size());
    for (double p : points) require_positive(p, "mean input");
  }
  const LineMetric e = g.geodesic_equivalent();
  double acc = 0.0;
  if (e.family == LineFamily::AffineInvariant) {
    for (std::size_t i = 0; i < points.size(); ++i) acc += weights[i] * std::log(points[i]);
    return std::exp(acc);
  }
  for (std::size_t i = 0; i < points.size(); ++i) acc += weights[i] * power(points[i], e.theta);
  return power(acc, 1.0 / e.theta);
}

LineMetric deform(const LineMetric& g, double theta) {
  if (theta == 0.0) throw GeometryError(ErrorCode::ZeroTheta, "deformation exponent is zero");
  switch (g.family) {
    case LineFamily::AffineInvariant:
      return g;
    case LineFamily::PowerEuclidean:
      return LineMetric::power_euclidean(g.theta * theta);
    case LineFamily::GeneralizedBW:
      return LineMetric::generalized_bw(g.m, g.theta * theta);
  }
  return g;
}

double deformed_inner_generic(const LineMetric& base, double theta, double p, double v,
                              double w) {
  if (theta == 0.0) throw GeometryError(ErrorCode::ZeroTheta, "deformation exponent is zero");
  const double scale = power(p, theta - 1.0);
  return line_inner(base, power(p, theta), scale * v, scale * w, Mode::Raw);
}

}  // namespace cholspace
