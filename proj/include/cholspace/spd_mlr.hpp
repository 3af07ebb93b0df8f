#pragma once

// Closed-form SPD multinomial logistic regression scores under θ-CDEM and
// θ-CDGBWM. Returns raw logits; softmax is left to the caller.

#include <vector>

#include "cholspace/spd_manifold.hpp"

namespace cholspace {

struct MlrClass {
  CholeskyPoint prototype;  // L_j with P_j = L_j L_j^T
  LowerTriangular direction;  // A_j
};

struct MlrParams {
  std::vector<MlrClass> classes;
  /// Must be a CDEM or CDGBWM spec; 𝕄 defaults to the identity.
  SpdMetricSpec metric;
};

/// logit_j = ⟨⌊K⌋ - ⌊L_j⌋, ⌊A_j⌋⟩ + diagonal term, with S = K K^T:
///   CDEM:   (1/2θ) ⟨𝔻K^θ - 𝔻L_j^θ, 𝔻A_j⟩
///   CDGBWM: (1/4θ) ⟨𝔻K^{θ/2} - 𝔻L_j^{θ/2}, 𝕄^-1 𝔻A_j⟩
/// Throws DimMismatch, and ConfigError for fewer than two classes or an LCM
/// metric.
std::vector<double> mlr_logits(const MlrParams& params, const SpdPoint& S);

}  // namespace cholspace
