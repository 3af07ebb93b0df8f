#include "cholspace/spd_mlr.hpp"

namespace cholspace {

std::vector<double> mlr_logits(const MlrParams& params, const SpdPoint& S) {
  if (params.classes.size() < 2) {
    throw GeometryError(ErrorCode::ConfigError, "MLR needs at least two classes");
  }
  const CholeskyMetricSpec& spec = params.metric.underlying;
  const LineFamily family = spec.line.family;
  if (family == LineFamily::AffineInvariant) {
    throw GeometryError(ErrorCode::ConfigError, "MLR scores are defined for CDEM and CDGBWM");
  }
  const bool gbw = family == LineFamily::GeneralizedBW;
  const double theta = spec.line.theta;
  const double a = gbw ? theta / 2.0 : theta;
  const double coeff = gbw ? 1.0 / (4.0 * theta) : 1.0 / (2.0 * theta);

  const Index n = S.n();
  if (spec.weights && spec.weights->n() != n) {
    throw GeometryError(ErrorCode::DimMismatch, "weight matrix size does not match input");
  }
  const Matrix& K = S.factor().matrix();

  std::vector<double> logits;
  logits.reserve(params.classes.size());
  for (const MlrClass& c : params.classes) {
    if (c.prototype.n() != n || c.direction.n() != n) {
      throw GeometryError(ErrorCode::DimMismatch, "class parameters do not match input size");
    }
    const Matrix& Lj = c.prototype.matrix();
    const Matrix& Aj = c.direction.matrix();
    double off = 0.0;
    for (Index j = 0; j < n; ++j) {
      for (Index i = j + 1; i < n; ++i) off += (K(i, j) - Lj(i, j)) * Aj(i, j);
    }
    double diag = 0.0;
    for (Index i = 0; i < n; ++i) {
      double w = Aj(i, i);
      if (gbw && spec.weights) w /= (*spec.weights)[i];
      diag += (power(K(i, i), a) - power(Lj(i, i), a)) * w;
    }
    logits.push_back(off + coeff * diag);
  }
  return logits;
}

}  // namespace cholspace
