#include "cholspace/spd_manifold.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace cholspace {

namespace {

void require_dims(Index a, Index b) {
  if (a != b) throw GeometryError(ErrorCode::DimMismatch, "operand dimensions differ");
}

SpdPoint to_spd(const CholeskyPoint& L) { return SpdPoint::from_factor(L); }

}  // namespace

SpdMetricSpec SpdMetricSpec::lcm(Mode mode) { return {CholeskyMetricSpec::cm(mode)}; }

SpdMetricSpec SpdMetricSpec::cdem(double theta, Mode mode) {
  return {CholeskyMetricSpec::dem(theta, mode)};
}

SpdMetricSpec SpdMetricSpec::cdgbwm(double theta, std::optional<PositiveDiag> weights,
                                    Mode mode) {
  return {CholeskyMetricSpec::dgbwm(theta, std::move(weights), mode)};
}

std::string SpdMetricSpec::name() const {
  if (underlying.line.family == LineFamily::AffineInvariant) return "LCM";
  std::string s = underlying.name();
  s.insert(s.find('-') + 1, "C");
  return s;
}

LowerTriTangent chol_diff(const SpdPoint& P, const SymTangent& V) {
  require_dims(P.n(), V.n());
  const LowerTriangular& L = P.factor().factor();
  // L^-1 V L^-T via two forward solves.
  const Matrix A = tri_solve(L, V.matrix());
  const Matrix S = tri_solve(L, A.transpose());
  Matrix half = strict_lower(S);
  half.diagonal() = 0.5 * S.diagonal();
  return LowerTriangular(L.matrix() * half);
}

SymTangent chol_diff_inv(const CholeskyPoint& L, const LowerTriTangent& X) {
  require_dims(L.n(), X.n());
  const Matrix XLt = X.matrix() * L.matrix().transpose();
  return SymTangent(XLt + XLt.transpose());
}

double spd_inner(const SpdMetricSpec& spec, const SpdPoint& P, const SymTangent& V,
                 const SymTangent& W) {
  return inner(spec.underlying, P.factor(), chol_diff(P, V), chol_diff(P, W));
}

SpdPoint spd_geodesic(const SpdMetricSpec& spec, const SpdPoint& P, const SymTangent& V,
                      double t) {
  return to_spd(geodesic(spec.underlying, P.factor(), chol_diff(P, V), t));
}

SpdPoint spd_exp(const SpdMetricSpec& spec, const SpdPoint& P, const SymTangent& V) {
  return spd_geodesic(spec, P, V, 1.0);
}

SymTangent spd_log(const SpdMetricSpec& spec, const SpdPoint& P, const SpdPoint& Q) {
  return chol_diff_inv(P.factor(), log_map(spec.underlying, P.factor(), Q.factor()));
}

SymTangent spd_transport(const SpdMetricSpec& spec, const SpdPoint& P, const SpdPoint& Q,
                         const SymTangent& V) {
  const LowerTriTangent moved = transport(spec.underlying, P.factor(), Q.factor(), chol_diff(P, V));
  return chol_diff_inv(Q.factor(), moved);
}

double spd_dist(const SpdMetricSpec& spec, const SpdPoint& P, const SpdPoint& Q) {
  return dist(spec.underlying, P.factor(), Q.factor());
}

SpdPoint spd_wfm(const SpdMetricSpec& spec, std::span<const double> weights,
                 std::span<const SpdPoint> points) {
  std::vector<CholeskyPoint> factors;
  factors.reserve(points.size());
  for (const auto& p : points) factors.push_back(p.factor());
  return to_spd(wfm(spec.underlying, weights, factors));
}

SpdPoint spd_geodesic_between(const SpdMetricSpec& spec, const SpdPoint& P, const SpdPoint& Q,
                              double t) {
  require_dims(P.n(), Q.n());
  const CholeskyPoint& L = P.factor();
  const CholeskyPoint& K = Q.factor();
  const Vector dl = L.diagonal();
  const Vector dk = K.diagonal();
  Vector diag(P.n());
  const LineMetric e = spec.underlying.line.geodesic_equivalent();
  for (Index i = 0; i < P.n(); ++i) {
    if (e.family == LineFamily::AffineInvariant) {
      const double ll = std::log(dl[i]);
      diag[i] = std::exp(ll + t * (std::log(dk[i]) - ll));
    } else {
      const double a = e.theta;
      const double la = power(dl[i], a);
      diag[i] = power(la + t * (power(dk[i], a) - la), 1.0 / a);
    }
  }
  const Matrix lower = L.factor().strict_lower() +
                       t * (K.factor().strict_lower() - L.factor().strict_lower());
  return to_spd(CholeskyPoint(LowerTriangular::from_parts(lower, diag), spec.underlying.mode));
}

SpdPoint spd_gyro_add(const SpdMetricSpec& spec, const SpdPoint& P, const SpdPoint& Q) {
  return to_spd(gyro_add(spec.underlying, P.factor(), Q.factor()));
}

SpdPoint spd_gyro_scale(const SpdMetricSpec& spec, double t, const SpdPoint& P) {
  return to_spd(gyro_scale(spec.underlying, t, P.factor()));
}

// Baselines ------------------------------------------------------------------

BaselineGeodesic BaselineGeodesic::parse(std::string_view text) {
  if (text == "EM") return {BaselineKind::EM, 1.0};
  if (text == "LEM") return {BaselineKind::LEM, 1.0};
  if (text == "AIM") return {BaselineKind::AIM, 1.0};
  if (text == "LCM") return {BaselineKind::LCM, 1.0};
  if (text == "BWM") return {BaselineKind::BWM, 1.0};
  const auto dash = text.find('-');
  if (dash == std::string_view::npos || dash == 0) {
    throw GeometryError(ErrorCode::ParseError, "unknown geodesic kind '" + std::string(text) + "'");
  }
  double theta = 0.0;
  const auto head = text.substr(0, dash);
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), theta);
  if (ec != std::errc() || ptr != head.data() + head.size()) {
    throw GeometryError(ErrorCode::ParseError, "bad exponent in '" + std::string(text) + "'");
  }
  if (theta == 0.0) throw GeometryError(ErrorCode::ZeroTheta, "exponent must be nonzero");
  const auto tail = text.substr(dash + 1);
  if (tail == "EM") return {BaselineKind::PE, theta};
  if (tail == "CDEM") return {BaselineKind::CDEM, theta};
  if (tail == "CDGBWM") return {BaselineKind::CDGBWM, theta};
  throw GeometryError(ErrorCode::ParseError, "unknown geodesic kind '" + std::string(text) + "'");
}

std::string BaselineGeodesic::name() const {
  std::ostringstream os;
  switch (kind) {
    case BaselineKind::EM: return "EM";
    case BaselineKind::LEM: return "LEM";
    case BaselineKind::AIM: return "AIM";
    case BaselineKind::LCM: return "LCM";
    case BaselineKind::BWM: return "BWM";
    case BaselineKind::PE: os << theta << "-EM"; break;
    case BaselineKind::CDEM: os << theta << "-CDEM"; break;
    case BaselineKind::CDGBWM: os << theta << "-CDGBWM"; break;
  }
  return os.str();
}

SpdPoint baseline_geodesic(const BaselineGeodesic& kind, const SpdPoint& P, const SpdPoint& Q,
                           double t) {
  require_dims(P.n(), Q.n());
  const Matrix& p = P.matrix();
  const Matrix& q = Q.matrix();
  switch (kind.kind) {
    case BaselineKind::EM:
      return SpdPoint(p + t * (q - p));
    case BaselineKind::PE: {
      const Matrix pa = sym_pow(p, kind.theta);
      return SpdPoint(sym_pow(pa + t * (sym_pow(q, kind.theta) - pa), 1.0 / kind.theta));
    }
    case BaselineKind::LEM: {
      const Matrix lp = sym_log(p);
      return SpdPoint(sym_exp(lp + t * (sym_log(q) - lp)));
    }
    case BaselineKind::AIM: {
      // Q^{1/2} (Q^{-1/2} P Q^{-1/2})^s Q^{1/2} runs from Q to P; s = 1 - t
      // re-anchors it at P.
      const Matrix qh = sym_sqrt(q);
      const Matrix qih = sym_pow(q, -0.5);
      return SpdPoint(qh * sym_pow(qih * p * qih, 1.0 - t) * qh);
    }
    case BaselineKind::BWM: {
      const Matrix ph = sym_sqrt(p);
      const Matrix pih = sym_pow(p, -0.5);
      const Matrix pq_half = ph * sym_sqrt(ph * q * ph) * pih;  // (PQ)^{1/2}
      const double s = 1.0 - t;
      return SpdPoint(s * s * p + t * t * q + t * s * (pq_half + pq_half.transpose()));
    }
    case BaselineKind::LCM:
      return spd_geodesic_between(SpdMetricSpec::lcm(), P, Q, t);
    case BaselineKind::CDEM:
      return spd_geodesic_between(SpdMetricSpec::cdem(kind.theta), P, Q, t);
    case BaselineKind::CDGBWM:
      return spd_geodesic_between(SpdMetricSpec::cdgbwm(kind.theta), P, Q, t);
  }
  throw GeometryError(ErrorCode::ConfigError, "unhandled geodesic kind");
}

std::vector<InterpolationRow> interpolation_table(const SpdPoint& P, const SpdPoint& Q,
                                                  std::span<const BaselineGeodesic> kinds,
                                                  int steps) {
  if (steps < 2) throw GeometryError(ErrorCode::ConfigError, "steps must be >= 2");
  std::vector<InterpolationRow> rows;
  rows.reserve(kinds.size());
  for (const auto& kind : kinds) {
    InterpolationRow row;
    row.name = kind.name();
    for (int i = 0; i < steps; ++i) {
      const double t = static_cast<double>(i) / (steps - 1);
      row.t.push_back(t);
      // Endpoints are reported from the inputs themselves.
      if (i == 0) {
        row.determinant.push_back(determinant(P));
      } else if (i == steps - 1) {
        row.determinant.push_back(determinant(Q));
      } else {
        row.determinant.push_back(determinant(baseline_geodesic(kind, P, Q, t)));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cholspace
