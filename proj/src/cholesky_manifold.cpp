#include "cholspace/cholesky_manifold.hpp"

#include <cmath>
#include <sstream>

namespace cholspace {

namespace {

void require_dims(Index n, Index m) {
  if (n != m) throw GeometryError(ErrorCode::DimMismatch, "operand dimensions differ");
}

void check_point(const CholeskyMetricSpec& spec, const CholeskyPoint& L) {
  if (spec.weights && spec.weights->n() != L.n()) {
    throw GeometryError(ErrorCode::DimMismatch, "weight matrix size does not match point");
  }
  if (spec.mode == Mode::Raw) return;
  for (Index i = 0; i < L.n(); ++i) {
    const double d = L.matrix()(i, i);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw GeometryError(ErrorCode::DomainError, "Cholesky point has a nonpositive diagonal");
    }
  }
}

double frobenius_strict_lower(const Matrix& a, const Matrix& b) {
  double acc = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = j + 1; i < a.rows(); ++i) acc += a(i, j) * b(i, j);
  }
  return acc;
}

CholeskyPoint make_point(const Matrix& lower, const Vector& diag) {
  return CholeskyPoint(LowerTriangular::from_parts(lower, diag), Mode::Raw);
}

}  // namespace

CholeskyMetricSpec CholeskyMetricSpec::cm(Mode mode) {
  return {LineMetric::affine_invariant(), std::nullopt, mode};
}

CholeskyMetricSpec CholeskyMetricSpec::dem(double theta, Mode mode) {
  return {LineMetric::power_euclidean(theta), std::nullopt, mode};
}

CholeskyMetricSpec CholeskyMetricSpec::dgbwm(double theta, std::optional<PositiveDiag> weights,
                                             Mode mode) {
  return {LineMetric::generalized_bw(1.0, theta), std::move(weights), mode};
}

LineMetric CholeskyMetricSpec::slot(Index i) const {
  if (line.family == LineFamily::GeneralizedBW && weights) return line.with_weight((*weights)[i]);
  return line;
}

CholeskyMetricSpec CholeskyMetricSpec::with_mode(Mode m) const {
  CholeskyMetricSpec s = *this;
  s.mode = m;
  return s;
}

std::string CholeskyMetricSpec::name() const {
  std::ostringstream os;
  switch (line.family) {
    case LineFamily::AffineInvariant: return "CM";
    case LineFamily::PowerEuclidean: os << line.theta << "-DEM"; break;
    case LineFamily::GeneralizedBW: os << line.theta << "-DGBWM"; break;
  }
  return os.str();
}

double inner(const CholeskyMetricSpec& spec, const CholeskyPoint& L, const LowerTriTangent& X,
             const LowerTriTangent& Y) {
  require_dims(L.n(), X.n());
  require_dims(L.n(), Y.n());
  check_point(spec, L);
  double acc = frobenius_strict_lower(X.matrix(), Y.matrix());
  for (Index i = 0; i < L.n(); ++i) {
    acc += line_inner(spec.slot(i), L.matrix()(i, i), X(i, i), Y(i, i), Mode::Raw);
  }
  return acc;
}

bool geodesic_defined(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                      const LowerTriTangent& X, double t) {
  require_dims(L.n(), X.n());
  for (Index i = 0; i < L.n(); ++i) {
    if (!line_geodesic_defined(spec.slot(i), L.matrix()(i, i), X(i, i), t)) return false;
  }
  return true;
}

CholeskyPoint geodesic(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                       const LowerTriTangent& X, double t) {
  require_dims(L.n(), X.n());
  check_point(spec, L);
  if (spec.mode == Mode::Checked && !geodesic_defined(spec, L, X, t)) {
    throw GeometryError(ErrorCode::OutOfDomain, "geodesic parameter outside its domain");
  }
  const Index n = L.n();
  Vector diag(n);
  for (Index i = 0; i < n; ++i) {
    diag[i] = line_geodesic(spec.slot(i), L.matrix()(i, i), X(i, i), t, spec.mode);
  }
  return make_point(L.factor().strict_lower() + t * X.strict_lower(), diag);
}

CholeskyPoint exp_map(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                      const LowerTriTangent& X) {
  return geodesic(spec, L, X, 1.0);
}

LowerTriTangent log_map(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                        const CholeskyPoint& K) {
  require_dims(L.n(), K.n());
  check_point(spec, L);
  check_point(spec, K);
  const Index n = L.n();
  Vector diag(n);
  for (Index i = 0; i < n; ++i) {
    diag[i] = line_log(spec.slot(i), L.matrix()(i, i), K.matrix()(i, i), Mode::Raw);
  }
  return LowerTriangular::from_parts(K.factor().strict_lower() - L.factor().strict_lower(), diag);
}

LowerTriTangent transport(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                          const CholeskyPoint& K, const LowerTriTangent& X) {
  require_dims(L.n(), K.n());
  require_dims(L.n(), X.n());
  check_point(spec, L);
  check_point(spec, K);
  const Index n = L.n();
  Vector diag(n);
  for (Index i = 0; i < n; ++i) {
    diag[i] =
        line_transport(spec.slot(i), L.matrix()(i, i), K.matrix()(i, i), X(i, i), Mode::Raw);
  }
  return LowerTriangular::from_parts(X.strict_lower(), diag);
}

double dist(const CholeskyMetricSpec& spec, const CholeskyPoint& L, const CholeskyPoint& K) {
  require_dims(L.n(), K.n());
  check_point(spec, L);
  check_point(spec, K);
  double acc = (K.factor().strict_lower() - L.factor().strict_lower()).squaredNorm();
  for (Index i = 0; i < L.n(); ++i) {
    const double d = line_dist(spec.slot(i), L.matrix()(i, i), K.matrix()(i, i), Mode::Raw);
    acc += d * d;
  }
  return std::sqrt(acc);
}

CholeskyPoint wfm(const CholeskyMetricSpec& spec, std::span<const double> weights,
                  std::span<const CholeskyPoint> points) {
  if (points.empty()) throw GeometryError(ErrorCode::BadWeights, "no points to average");
  if (spec.mode == Mode::Checked) validate_weights(weights, points.size());
  const Index n = points.front().n();
  for (const auto& p : points) {
    require_dims(n, p.n());
    check_point(spec, p);
  }
  Matrix lower = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < points.size(); ++k) {
    lower += weights[k] * points[k].factor().strict_lower();
  }
  Vector diag(n);
  std::vector<double> slot_values(points.size());
  for (Index i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < points.size(); ++k) slot_values[k] = points[k].matrix()(i, i);
    diag[i] = line_wfm(spec.slot(i), weights, slot_values, Mode::Raw);
  }
  return make_point(lower, diag);
}

CholeskyMetricSpec deformed_spec(const CholeskyMetricSpec& base, double theta) {
  CholeskyMetricSpec s = base;
  s.line = deform(base.line, theta);
  return s;
}

double deformed_inner_generic(const CholeskyMetricSpec& base, double theta,
                              const CholeskyPoint& L, const LowerTriTangent& X,
                              const LowerTriTangent& Y) {
  require_dims(L.n(), X.n());
  require_dims(L.n(), Y.n());
  double acc = frobenius_strict_lower(X.matrix(), Y.matrix());
  for (Index i = 0; i < L.n(); ++i) {
    acc += deformed_inner_generic(base.slot(i), theta, L.matrix()(i, i), X(i, i), Y(i, i));
  }
  return acc;
}

}  // namespace cholspace
