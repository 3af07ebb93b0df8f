#include "cholspace/gyro.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "cholspace/random.hpp"

namespace cholspace {

namespace {

bool is_cm(const CholeskyMetricSpec& spec) {
  return spec.line.family == LineFamily::AffineInvariant;
}

// Exponent a such that the closed forms read (·)^{1/a}: θ for DEM, θ/2 for
// the GBW family.
double gyro_exponent(const CholeskyMetricSpec& spec) {
  return spec.line.geodesic_equivalent().theta;
}

void require_same_n(const CholeskyPoint& a, const CholeskyPoint& b) {
  if (a.n() != b.n()) throw GeometryError(ErrorCode::DimMismatch, "operand dimensions differ");
}

void check_points(const CholeskyMetricSpec& spec, std::initializer_list<const CholeskyPoint*> ps) {
  if (spec.mode == Mode::Raw) return;
  for (const CholeskyPoint* p : ps) {
    const Vector d = p->diagonal();
    for (Index i = 0; i < d.size(); ++i) {
      if (!(d[i] > 0.0) || !std::isfinite(d[i])) {
        throw GeometryError(ErrorCode::DomainError, "Cholesky point has a nonpositive diagonal");
      }
    }
  }
}

CholeskyPoint make_point(const Matrix& lower, const Vector& diag) {
  return CholeskyPoint(LowerTriangular::from_parts(lower, diag), Mode::Raw);
}

}  // namespace

bool add_defined(const CholeskyMetricSpec& spec, const CholeskyPoint& L, const CholeskyPoint& K) {
  require_same_n(L, K);
  if (is_cm(spec)) return true;
  const double a = gyro_exponent(spec);
  for (Index i = 0; i < L.n(); ++i) {
    if (!(power(L.matrix()(i, i), a) + power(K.matrix()(i, i), a) - 1.0 > 0.0)) return false;
  }
  return true;
}

bool scale_defined(const CholeskyMetricSpec& spec, double t, const CholeskyPoint& L) {
  if (is_cm(spec)) return true;
  const double a = gyro_exponent(spec);
  for (Index i = 0; i < L.n(); ++i) {
    if (!(t * power(L.matrix()(i, i), a) + (1.0 - t) > 0.0)) return false;
  }
  return true;
}

bool inverse_defined(const CholeskyMetricSpec& spec, const CholeskyPoint& L) {
  return scale_defined(spec, -1.0, L);
}

CholeskyPoint gyro_add(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                       const CholeskyPoint& K) {
  require_same_n(L, K);
  check_points(spec, {&L, &K});
  if (spec.mode == Mode::Checked && !add_defined(spec, L, K)) {
    throw GeometryError(ErrorCode::GyroDomainError, "𝔻L^a + 𝔻K^a - I is not positive");
  }
  const Index n = L.n();
  Vector diag(n);
  if (is_cm(spec)) {
    for (Index i = 0; i < n; ++i) diag[i] = L.matrix()(i, i) * K.matrix()(i, i);
  } else {
    const double a = gyro_exponent(spec);
    for (Index i = 0; i < n; ++i) {
      diag[i] = power(power(L.matrix()(i, i), a) + power(K.matrix()(i, i), a) - 1.0, 1.0 / a);
    }
  }
  return make_point(L.factor().strict_lower() + K.factor().strict_lower(), diag);
}

CholeskyPoint gyro_scale(const CholeskyMetricSpec& spec, double t, const CholeskyPoint& L) {
  check_points(spec, {&L});
  if (spec.mode == Mode::Checked && !scale_defined(spec, t, L)) {
    throw GeometryError(ErrorCode::GyroDomainError, "t𝔻L^a + (1-t)I is not positive");
  }
  const Index n = L.n();
  Vector diag(n);
  if (is_cm(spec)) {
    for (Index i = 0; i < n; ++i) diag[i] = power(L.matrix()(i, i), t);
  } else {
    const double a = gyro_exponent(spec);
    for (Index i = 0; i < n; ++i) {
      diag[i] = power(t * power(L.matrix()(i, i), a) + (1.0 - t), 1.0 / a);
    }
  }
  return make_point(t * L.factor().strict_lower(), diag);
}

CholeskyPoint gyro_inverse(const CholeskyMetricSpec& spec, const CholeskyPoint& L) {
  return gyro_scale(spec, -1.0, L);
}

CholeskyPoint gyr(const CholeskyMetricSpec& spec, const CholeskyPoint& L, const CholeskyPoint& K,
                  const CholeskyPoint& J) {
  require_same_n(L, K);
  require_same_n(L, J);
  check_points(spec, {&L, &K, &J});
  return J;
}

CholeskyPoint gyr_expression(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                             const CholeskyPoint& K, const CholeskyPoint& J) {
  const CholeskyPoint lk = gyro_add(spec, L, K);
  return gyro_add(spec, gyro_inverse(spec, lk), gyro_add(spec, L, gyro_add(spec, K, J)));
}

namespace {

template <class F>
CholeskyPoint as_gyro_error(F&& f) {
  try {
    return f();
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::OutOfDomain) {
      throw GeometryError(ErrorCode::GyroDomainError, e.what());
    }
    throw;
  }
}

}  // namespace

CholeskyPoint gyro_add_generic(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                               const CholeskyPoint& K) {
  require_same_n(L, K);
  return as_gyro_error([&] {
    const CholeskyPoint origin = CholeskyPoint::identity(L.n());
    const LowerTriTangent at_origin = log_map(spec, origin, K);
    return exp_map(spec, L, transport(spec, origin, L, at_origin));
  });
}

CholeskyPoint gyro_scale_generic(const CholeskyMetricSpec& spec, double t,
                                 const CholeskyPoint& L) {
  return as_gyro_error([&] {
    const CholeskyPoint origin = CholeskyPoint::identity(L.n());
    return exp_map(spec, origin, t * log_map(spec, origin, L));
  });
}

// Axiom suite ----------------------------------------------------------------

bool AxiomReport::all_passed() const {
  if (skipped > 0) return false;
  return std::all_of(axioms.begin(), axioms.end(),
                     [](const auto& kv) { return kv.second.failed == 0; });
}

double AxiomReport::worst_residual() const {
  double w = 0.0;
  for (const auto& [name, s] : axioms) w = std::max(w, s.worst);
  return w;
}

namespace {

// Diagonal slots are drawn so that 𝔻L^a lies in (0.5, 1.5), keeping most
// sums and scalings inside the domain.
CholeskyPoint sample_point(const CholeskyMetricSpec& spec, Index n, Rng& rng) {
  Matrix lower = Matrix::Zero(n, n);
  Vector diag(n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) lower(i, j) = uniform(rng, -1.0, 1.0);
  }
  for (Index i = 0; i < n; ++i) {
    if (is_cm(spec)) {
      diag[i] = std::exp(uniform(rng, -0.5, 0.5));
    } else {
      diag[i] = power(uniform(rng, 0.5, 1.5), 1.0 / gyro_exponent(spec));
    }
  }
  return CholeskyPoint(LowerTriangular::from_parts(lower, diag));
}

using Residuals = std::vector<std::pair<const char*, double>>;

Residuals evaluate_trial(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                         const CholeskyPoint& K, const CholeskyPoint& J, double s, double t) {
  const Index n = L.n();
  const Matrix I = Matrix::Identity(n, n);
  const CholeskyPoint E = CholeskyPoint::identity(n);
  auto rel = [](const CholeskyPoint& a, const CholeskyPoint& b) {
    return relative_error(a.matrix(), b.matrix());
  };

  Residuals r;
  r.emplace_back("G1_left_identity", rel(gyro_add(spec, E, L), L));
  r.emplace_back("G2_left_inverse",
                 relative_error(gyro_add(spec, gyro_inverse(spec, L), L).matrix(), I));

  const CholeskyPoint lk = gyro_add(spec, L, K);
  const CholeskyPoint gyr_lk_j = gyr_expression(spec, L, K, J);
  r.emplace_back("G3_left_gyroassociative",
                 rel(gyro_add(spec, L, gyro_add(spec, K, J)), gyro_add(spec, lk, gyr_lk_j)));
  r.emplace_back("G4_left_reduction", rel(gyr_lk_j, gyr_expression(spec, lk, K, J)));
  r.emplace_back("gyrocommutative_law",
                 rel(lk, gyr_expression(spec, L, K, gyro_add(spec, K, L))));

  double v1 = rel(gyro_scale(spec, 1.0, L), L);
  v1 = std::max(v1, relative_error(gyro_scale(spec, 0.0, L).matrix(), I));
  v1 = std::max(v1, relative_error(gyro_scale(spec, t, E).matrix(), I));
  v1 = std::max(v1, rel(gyro_scale(spec, -1.0, L), gyro_inverse(spec, L)));
  r.emplace_back("V1_scalar_identities", v1);

  r.emplace_back("V2_scalar_distributive",
                 rel(gyro_scale(spec, s + t, L),
                     gyro_add(spec, gyro_scale(spec, s, L), gyro_scale(spec, t, L))));
  r.emplace_back("V3_scalar_associative",
                 rel(gyro_scale(spec, s * t, L), gyro_scale(spec, s, gyro_scale(spec, t, L))));
  r.emplace_back("V4_gyration_commutes_with_scaling",
                 rel(gyr_expression(spec, L, K, gyro_scale(spec, t, J)),
                     gyro_scale(spec, t, gyr_lk_j)));
  r.emplace_back(
      "V5_trivial_gyration_on_a_line",
      rel(gyr_expression(spec, gyro_scale(spec, s, L), gyro_scale(spec, t, L), J), J));
  r.emplace_back("gyr_is_identity", rel(gyr_lk_j, gyr(spec, L, K, J)));
  r.emplace_back("closed_form_add_matches_generic", rel(lk, gyro_add_generic(spec, L, K)));
  r.emplace_back("closed_form_scale_matches_generic",
                 rel(gyro_scale(spec, t, L), gyro_scale_generic(spec, t, L)));
  return r;
}

}  // namespace

AxiomReport axiom_suite(const CholeskyMetricSpec& base_spec, Index n, std::uint64_t seed,
                        int trials, double tolerance) {
  if (trials < 1) throw GeometryError(ErrorCode::ConfigError, "trials must be >= 1");
  const CholeskyMetricSpec spec = base_spec.with_mode(Mode::Checked);
  AxiomReport report;
  report.trials = trials;
  report.tolerance = tolerance;
  constexpr int kMaxRetries = 100;

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(stream_seed({seed, static_cast<std::uint64_t>(trial)}));
    bool done = false;
    for (int attempt = 0; attempt < kMaxRetries && !done; ++attempt) {
      const CholeskyPoint L = sample_point(spec, n, rng);
      const CholeskyPoint K = sample_point(spec, n, rng);
      const CholeskyPoint J = sample_point(spec, n, rng);
      const double s = uniform(rng, -1.0, 1.0);
      const double t = uniform(rng, -1.0, 1.0);
      Residuals res;
      try {
        res = evaluate_trial(spec, L, K, J, s, t);
      } catch (const GeometryError& e) {
        if (e.code() == ErrorCode::GyroDomainError) continue;
        throw;
      }
      for (const auto& [name, value] : res) {
        AxiomStats& st = report.axioms[name];
        // NaN residuals count as failures.
        if (value <= tolerance) {
          ++st.passed;
        } else {
          ++st.failed;
        }
        if (!(value <= st.worst)) st.worst = value;
      }
      done = true;
    }
    if (!done) ++report.skipped;
  }
  return report;
}

}  // namespace cholspace
