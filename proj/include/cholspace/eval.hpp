#pragma once

// Ad-hoc operator evaluation from JSON, used by `cholspace eval`.
//
// Metric tags: CM, <θ>-DEM, DGBWM, <θ>-DGBWM on the Cholesky manifold and
// LCM, <θ>-CDEM, CDGBWM, <θ>-CDGBWM on SPD matrices.
//
// Input fields by operation (Cholesky / SPD names):
//   inner        L, X, Y        /  P, V, W
//   geodesic     L, X, t        /  P, V, t
//   exp          L, X           /  P, V
//   log          L, K           /  P, Q
//   transport    L, K, X        /  P, Q, V
//   dist         L, K           /  P, Q
//   wfm          points, weights
//   gyro_add     L, K           /  P, Q
//   gyro_scale   t, L           /  t, P
//   gyro_inverse L              /  P
//   interpolate  -              /  P, Q, t   (geodesic from P to Q)
// Optional: "M" (diagonal weights for the GBW family), "mode": "raw" | "checked".
// The result is {"result": number | matrix}.

#include <string>

#include <json.hpp>

namespace cholspace {

nlohmann::json evaluate_operator(const std::string& metric, const std::string& op,
                                 const nlohmann::json& input);

}  // namespace cholspace
