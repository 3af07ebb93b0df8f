#pragma once

// Cholesky-manifold structures pulled back to SPD matrices through
// P = L L^T, plus the baseline SPD geodesics used by the interpolation
// comparison.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cholspace/cholesky_manifold.hpp"
#include "cholspace/gyro.hpp"

namespace cholspace {

struct SpdMetricSpec {
  CholeskyMetricSpec underlying;

  /// Log-Cholesky metric (pullback of CM).
  static SpdMetricSpec lcm(Mode mode = Mode::Checked);
  static SpdMetricSpec cdem(double theta, Mode mode = Mode::Checked);
  static SpdMetricSpec cdgbwm(double theta = 1.0, std::optional<PositiveDiag> weights = {},
                              Mode mode = Mode::Checked);

  std::string name() const;
};

/// Differential of the Cholesky map: L (L^-1 V L^-T)_{1/2}, where (A)_{1/2}
/// keeps the strict lower part and halves the diagonal.
LowerTriTangent chol_diff(const SpdPoint& P, const SymTangent& V);
/// Inverse of chol_diff at L: X L^T + L X^T.
SymTangent chol_diff_inv(const CholeskyPoint& L, const LowerTriTangent& X);

double spd_inner(const SpdMetricSpec& spec, const SpdPoint& P, const SymTangent& V,
                 const SymTangent& W);
SpdPoint spd_geodesic(const SpdMetricSpec& spec, const SpdPoint& P, const SymTangent& V,
                      double t);
SpdPoint spd_exp(const SpdMetricSpec& spec, const SpdPoint& P, const SymTangent& V);
SymTangent spd_log(const SpdMetricSpec& spec, const SpdPoint& P, const SpdPoint& Q);
SymTangent spd_transport(const SpdMetricSpec& spec, const SpdPoint& P, const SpdPoint& Q,
                         const SymTangent& V);
double spd_dist(const SpdMetricSpec& spec, const SpdPoint& P, const SpdPoint& Q);
SpdPoint spd_wfm(const SpdMetricSpec& spec, std::span<const double> weights,
                 std::span<const SpdPoint> points);

/// Geodesic from P (t = 0) to Q (t = 1) through the Cholesky factors:
/// chol^-1[⌊L⌋ + t(⌊K⌋ - ⌊L⌋) + interpolated diagonal], the diagonal being
/// (𝔻L^a + t(𝔻K^a - 𝔻L^a))^{1/a} for the power families and
/// exp(log 𝔻L + t(log 𝔻K - log 𝔻L)) for LCM.
SpdPoint spd_geodesic_between(const SpdMetricSpec& spec, const SpdPoint& P, const SpdPoint& Q,
                              double t);

SpdPoint spd_gyro_add(const SpdMetricSpec& spec, const SpdPoint& P, const SpdPoint& Q);
SpdPoint spd_gyro_scale(const SpdMetricSpec& spec, double t, const SpdPoint& P);

// Baseline geodesics ---------------------------------------------------------

enum class BaselineKind { EM, PE, LEM, AIM, LCM, BWM, CDEM, CDGBWM };

struct BaselineGeodesic {
  BaselineKind kind = BaselineKind::EM;
  double theta = 1.0;  // PE, CDEM and CDGBWM only

  /// Accepts "EM", "LEM", "AIM", "LCM", "BWM" and "<θ>-EM", "<θ>-CDEM",
  /// "<θ>-CDGBWM". Throws ParseError.
  static BaselineGeodesic parse(std::string_view text);
  std::string name() const;
};

/// γ(t) with γ(0) = P and γ(1) = Q for every kind.
SpdPoint baseline_geodesic(const BaselineGeodesic& kind, const SpdPoint& P, const SpdPoint& Q,
                           double t);

struct InterpolationRow {
  std::string name;
  std::vector<double> t;
  std::vector<double> determinant;
};

/// Determinants along each geodesic at t = i / (steps - 1).
std::vector<InterpolationRow> interpolation_table(const SpdPoint& P, const SpdPoint& Q,
                                                  std::span<const BaselineGeodesic> kinds,
                                                  int steps);

}  // namespace cholspace
