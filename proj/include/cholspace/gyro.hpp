#pragma once

// Gyro structures on the Cholesky manifold with the identity matrix as
// origin. Closed forms:
//
//   CM:        ⌊L⌋ + ⌊K⌋ + 𝔻L𝔻K                  t⌊L⌋ + 𝔻L^t
//   θ-DEM:     ⌊L⌋ + ⌊K⌋ + (𝔻L^θ + 𝔻K^θ - I)^{1/θ}  t⌊L⌋ + (t𝔻L^θ + (1-t)I)^{1/θ}
//   θ-DGBWM:   as θ-DEM with θ replaced by θ/2 (independent of 𝕄)
//
// The power families are only defined where the bracketed diagonal stays
// positive; the *_defined predicates expose those conditions.

#include <cstdint>
#include <map>
#include <string>

#include "cholspace/cholesky_manifold.hpp"

namespace cholspace {

bool add_defined(const CholeskyMetricSpec& spec, const CholeskyPoint& L, const CholeskyPoint& K);
bool scale_defined(const CholeskyMetricSpec& spec, double t, const CholeskyPoint& L);
bool inverse_defined(const CholeskyMetricSpec& spec, const CholeskyPoint& L);

/// L ⊕ K. Checked mode throws GyroDomainError when add_defined fails.
CholeskyPoint gyro_add(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                       const CholeskyPoint& K);
/// t ⊙ L.
CholeskyPoint gyro_scale(const CholeskyMetricSpec& spec, double t, const CholeskyPoint& L);
/// ⊖L = (-1) ⊙ L.
CholeskyPoint gyro_inverse(const CholeskyMetricSpec& spec, const CholeskyPoint& L);

/// gyr[L, K] J. The gyration is the identity for every supported family, so
/// this validates the arguments and returns J.
CholeskyPoint gyr(const CholeskyMetricSpec& spec, const CholeskyPoint& L, const CholeskyPoint& K,
                  const CholeskyPoint& J);
/// ⊖(L ⊕ K) ⊕ (L ⊕ (K ⊕ J)), the defining expression of gyr[L, K] J.
CholeskyPoint gyr_expression(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                             const CholeskyPoint& K, const CholeskyPoint& J);

/// exp_L(PT_{I→L}(log_I K)), built from the Riemannian operators.
CholeskyPoint gyro_add_generic(const CholeskyMetricSpec& spec, const CholeskyPoint& L,
                               const CholeskyPoint& K);
/// exp_I(t log_I L).
CholeskyPoint gyro_scale_generic(const CholeskyMetricSpec& spec, double t,
                                 const CholeskyPoint& L);

struct AxiomStats {
  int passed = 0;
  int failed = 0;
  double worst = 0.0;  // largest relative residual seen
};

struct AxiomReport {
  int trials = 0;
  int skipped = 0;  // trials with no in-domain sample after the retry cap
  double tolerance = 1e-10;
  std::map<std::string, AxiomStats> axioms;

  bool all_passed() const;
  double worst_residual() const;
};

/// Samples in-domain points and scalars and checks G1-G4, the gyrocommutative
/// law, V1-V5, gyr = id and closed-form vs generic agreement. Each trial seeds
/// its own generator from (seed, trial index).
AxiomReport axiom_suite(const CholeskyMetricSpec& spec, Index n, std::uint64_t seed, int trials,
                        double tolerance = 1e-10);

}  // namespace cholspace
