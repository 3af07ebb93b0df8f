#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cholspace/cholesky_manifold.hpp"
#include "test_util.hpp"

using namespace cholspace;
using cholspace::testing::make_rng;
using cholspace::testing::random_point;
using cholspace::testing::random_tangent;
using cholspace::testing::random_weights;

namespace {

CholeskyPoint scalar_point(double x) { return CholeskyPoint(LowerTriangular(Matrix::Constant(1, 1, x))); }
LowerTriangular scalar_tangent(double x) { return LowerTriangular(Matrix::Constant(1, 1, x)); }

PositiveDiag random_diag(Rng& rng, Index n) {
  Vector d(n);
  for (Index i = 0; i < n; ++i) d[i] = uniform(rng, 0.2, 5.0);
  return PositiveDiag(d);
}

std::vector<CholeskyMetricSpec> presets(Index n, Rng& rng) {
  std::vector<CholeskyMetricSpec> out{CholeskyMetricSpec::cm()};
  for (double th : {0.5, 1.0, 1.5}) {
    out.push_back(CholeskyMetricSpec::dem(th));
    out.push_back(CholeskyMetricSpec::dgbwm(th));
    out.push_back(CholeskyMetricSpec::dgbwm(th, random_diag(rng, n)));
  }
  return out;
}

// Nonnegative tangent diagonals keep every family's exp in domain.
LowerTriangular outward_tangent(Rng& rng, Index n) {
  Matrix m = random_tangent(rng, n).matrix();
  for (Index i = 0; i < n; ++i) m(i, i) = std::abs(m(i, i));
  return LowerTriangular(m);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

}  // namespace

TEST(CholeskyInner, Examples) {
  auto rng = make_rng(20);
  const auto X = random_tangent(rng, 4);
  EXPECT_NEAR(inner(CholeskyMetricSpec::dem(1.0), CholeskyPoint::identity(4), X, X),
              X.matrix().squaredNorm(), 1e-14);
  EXPECT_DOUBLE_EQ(inner(CholeskyMetricSpec::cm(), scalar_point(2), scalar_tangent(2), scalar_tangent(2)),
                   1.0);

  Matrix l = Matrix::Zero(2, 2);
  l(0, 0) = 1;
  l(1, 1) = 2;
  Matrix x = Matrix::Zero(2, 2);
  x(0, 0) = 2;
  x(1, 1) = 4;
  const auto spec = CholeskyMetricSpec::dgbwm(2.0, PositiveDiag(Vector(Eigen::Vector2d(1, 4))));
  EXPECT_DOUBLE_EQ(inner(spec, CholeskyPoint(LowerTriangular(l)), LowerTriangular(x), LowerTriangular(x)),
                   2.0);
}

TEST(CholeskyInner, CholeskyMetricFormula) {
  auto rng = make_rng(21);
  for (int k = 0; k < 50; ++k) {
    const auto L = random_point(rng, 4);
    const auto X = random_tangent(rng, 4);
    const auto Y = random_tangent(rng, 4);
    double expected = (X.strict_lower().array() * Y.strict_lower().array()).sum();
    for (Index i = 0; i < 4; ++i) expected += X(i, i) * Y(i, i) / std::pow(L.matrix()(i, i), 2);
    EXPECT_LE(relative_error(inner(CholeskyMetricSpec::cm(), L, X, Y), expected), 1e-13);
  }
}

TEST(CholeskyInner, SymmetricAndPositive) {
  auto rng = make_rng(22);
  for (const auto& spec : presets(3, rng)) {
    const auto L = random_point(rng, 3);
    const auto X = random_tangent(rng, 3);
    const auto Y = random_tangent(rng, 3);
    EXPECT_EQ(inner(spec, L, X, Y), inner(spec, L, Y, X));
    EXPECT_GT(inner(spec, L, X, X), 0.0);
  }
}

TEST(CholeskyInner, DimensionMismatch) {
  EXPECT_EQ(code_of([] {
              inner(CholeskyMetricSpec::cm(), CholeskyPoint::identity(2), LowerTriangular::zero(3),
                    LowerTriangular::zero(2));
            }),
            ErrorCode::DimMismatch);
}

TEST(CholeskyGeodesic, Examples) {
  auto rng = make_rng(23);
  const auto L = random_point(rng, 3);
  const auto X = random_tangent(rng, 3);
  for (const auto& spec : presets(3, rng)) EXPECT_EQ(geodesic(spec, L, X, 0.0), L);
  EXPECT_DOUBLE_EQ(geodesic(CholeskyMetricSpec::cm(), scalar_point(1), scalar_tangent(1), 1.0).matrix()(0, 0),
                   std::exp(1.0));
  EXPECT_DOUBLE_EQ(
      geodesic(CholeskyMetricSpec::dem(0.5), scalar_point(4), scalar_tangent(2), 1.0).matrix()(0, 0), 6.25);
}

TEST(CholeskyGeodesic, StrictLowerPartMovesLinearly) {
  auto rng = make_rng(24);
  for (const auto& spec : presets(4, rng)) {
    const auto L = random_point(rng, 4);
    const auto X = outward_tangent(rng, 4);
    const auto G = geodesic(spec, L, X, 0.7);
    EXPECT_LE(relative_error(G.factor().strict_lower(), L.factor().strict_lower() + 0.7 * X.strict_lower()),
              1e-15);
  }
}

TEST(CholeskyGeodesic, CheckedModeRejectsOutOfDomain) {
  const auto spec = CholeskyMetricSpec::dem(0.5);
  EXPECT_FALSE(geodesic_defined(spec, scalar_point(1), scalar_tangent(-4), 1.0));
  EXPECT_EQ(code_of([&] { geodesic(spec, scalar_point(1), scalar_tangent(-4), 1.0); }),
            ErrorCode::OutOfDomain);
}

TEST(CholeskyExp, Examples) {
  auto rng = make_rng(25);
  const auto L = random_point(rng, 3);
  for (const auto& spec : presets(3, rng)) EXPECT_EQ(exp_map(spec, L, LowerTriangular::zero(3)), L);
  const auto X = random_tangent(rng, 3);
  const Matrix expected = X.strict_lower() + Matrix::Identity(3, 3) + Matrix(X.diagonal().asDiagonal());
  EXPECT_LE(relative_error(exp_map(CholeskyMetricSpec::dem(1.0), CholeskyPoint::identity(3), X).matrix(),
                           expected),
            1e-15);
}

TEST(CholeskyLog, Examples) {
  auto rng = make_rng(26);
  const auto L = random_point(rng, 3);
  for (const auto& spec : presets(3, rng)) EXPECT_EQ(log_map(spec, L, L).matrix().norm(), 0.0);
  EXPECT_DOUBLE_EQ(log_map(CholeskyMetricSpec::cm(), scalar_point(1), scalar_point(std::exp(1.0))).matrix()(0, 0),
                   1.0);
  EXPECT_DOUBLE_EQ(log_map(CholeskyMetricSpec::dgbwm(2.0), scalar_point(1), scalar_point(4)).matrix()(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(exp_map(CholeskyMetricSpec::dgbwm(2.0), scalar_point(1), scalar_tangent(3)).matrix()(0, 0),
                   4.0);
}

TEST(CholeskyLog, ExpInvertsLog) {
  auto rng = make_rng(27);
  for (Index n : {2, 3, 5, 8}) {
    for (const auto& spec : presets(n, rng)) {
      for (int k = 0; k < 20; ++k) {
        const auto L = random_point(rng, n);
        const auto K = random_point(rng, n);
        EXPECT_LE(relative_error(exp_map(spec, L, log_map(spec, L, K)).matrix(), K.matrix()), 1e-12)
            << spec.name();
      }
    }
  }
}

TEST(CholeskyTransport, Examples) {
  auto rng = make_rng(28);
  const auto L = random_point(rng, 3);
  const auto K = random_point(rng, 3);
  const auto X = random_tangent(rng, 3);
  for (const auto& spec : presets(3, rng)) EXPECT_EQ(transport(spec, L, L, X), X);
  EXPECT_EQ(transport(CholeskyMetricSpec::dem(1.0), L, K, X), X);
  EXPECT_DOUBLE_EQ(
      transport(CholeskyMetricSpec::cm(), scalar_point(1), scalar_point(2), scalar_tangent(3)).matrix()(0, 0), 6.0);
}

TEST(CholeskyTransport, PreservesInner) {
  auto rng = make_rng(29);
  for (Index n : {2, 3, 5, 8}) {
    for (const auto& spec : presets(n, rng)) {
      for (int k = 0; k < 20; ++k) {
        const auto L = random_point(rng, n);
        const auto K = random_point(rng, n);
        const auto X = random_tangent(rng, n);
        const auto Y = random_tangent(rng, n);
        const double before = inner(spec, L, X, Y);
        const double after = inner(spec, K, transport(spec, L, K, X), transport(spec, L, K, Y));
        const double scale = std::sqrt(inner(spec, L, X, X) * inner(spec, L, Y, Y));
        EXPECT_LE(std::abs(after - before), 1e-12 * scale) << spec.name();
        const auto TX = transport(spec, L, K, X);
        EXPECT_LE(relative_error(inner(spec, K, TX, TX), inner(spec, L, X, X)), 1e-12) << spec.name();
        EXPECT_EQ(transport(spec, L, K, X).strict_lower(), X.strict_lower());
      }
    }
  }
}

TEST(CholeskyDist, Examples) {
  auto rng = make_rng(30);
  const auto L = random_point(rng, 3);
  for (const auto& spec : presets(3, rng)) EXPECT_EQ(dist(spec, L, L), 0.0);
  EXPECT_DOUBLE_EQ(dist(CholeskyMetricSpec::dem(0.5), scalar_point(1), scalar_point(4)), 2.0);
}

TEST(CholeskyDist, TriangleInequality) {
  auto rng = make_rng(31);
  const auto specs = presets(3, rng);
  for (int k = 0; k < 1000; ++k) {
    const auto& spec = specs[k % specs.size()];
    const auto A = random_point(rng, 3);
    const auto B = random_point(rng, 3);
    const auto C = random_point(rng, 3);
    EXPECT_GE(dist(spec, A, B) + dist(spec, B, C) - dist(spec, A, C), -1e-12);
    EXPECT_EQ(dist(spec, A, B), dist(spec, B, A));
  }
}

TEST(CholeskyDist, PowerCoordinateForm) {
  auto rng = make_rng(32);
  for (double th : {0.25, 0.5, 1.0, 1.5, 3.0}) {
    for (int k = 0; k < 50; ++k) {
      const auto L = random_point(rng, 4);
      const auto K = random_point(rng, 4);
      const PositiveDiag M = random_diag(rng, 4);
      // θ-DEM: Euclidean distance after p ↦ p^θ / θ on each diagonal slot.
      double dem2 = (K.factor().strict_lower() - L.factor().strict_lower()).squaredNorm();
      double gbw2 = dem2;
      for (Index i = 0; i < 4; ++i) {
        const double a = L.matrix()(i, i), b = K.matrix()(i, i);
        dem2 += std::pow((std::pow(b, th) - std::pow(a, th)) / th, 2);
        gbw2 += std::pow((std::pow(b, th / 2) - std::pow(a, th / 2)) / th, 2) / M[i];
      }
      EXPECT_LE(relative_error(dist(CholeskyMetricSpec::dem(th), L, K), std::sqrt(dem2)), 1e-12);
      EXPECT_LE(relative_error(dist(CholeskyMetricSpec::dgbwm(th, M), L, K), std::sqrt(gbw2)), 1e-12);
    }
  }
}

TEST(CholeskyGeodesic, ConstantSpeed) {
  auto rng = make_rng(33);
  for (Index n : {2, 3, 5, 8}) {
    for (const auto& spec : presets(n, rng)) {
      const auto L = random_point(rng, n);
      const auto K = random_point(rng, n);
      const auto X = log_map(spec, L, K);
      const double total = dist(spec, L, K);
      EXPECT_LE(relative_error(std::sqrt(inner(spec, L, X, X)), total), 1e-10);
      for (double t : {0.1, 0.35, 0.8}) {
        EXPECT_LE(std::abs(dist(spec, L, geodesic(spec, L, X, t)) - t * total), 1e-10 * std::max(1.0, total));
      }
    }
  }
}

TEST(CholeskyWfm, Examples) {
  auto rng = make_rng(34);
  const std::vector<double> one{1.0};
  const auto L = random_point(rng, 3);
  const std::vector<CholeskyPoint> single{L};
  for (const auto& spec : presets(3, rng)) {
    EXPECT_LE(relative_error(wfm(spec, one, single).matrix(), L.matrix()), 1e-15);
  }
  const std::vector<double> half{0.5, 0.5};
  const std::vector<CholeskyPoint> two{random_point(rng, 3), random_point(rng, 3)};
  EXPECT_LE(relative_error(wfm(CholeskyMetricSpec::dem(1.0), half, two).matrix(),
                           0.5 * (two[0].matrix() + two[1].matrix())),
            1e-15);
  const std::vector<CholeskyPoint> logs{scalar_point(1), scalar_point(std::exp(2.0))};
  EXPECT_DOUBLE_EQ(wfm(CholeskyMetricSpec::cm(), half, logs).matrix()(0, 0), std::exp(1.0));
}

TEST(CholeskyWfm, StationaryAndMinimizing) {
  auto rng = make_rng(35);
  for (Index n : {2, 3}) {
    for (const auto& spec : presets(n, rng)) {
      std::vector<CholeskyPoint> pts;
      for (int k = 0; k < 4; ++k) pts.push_back(random_point(rng, n));
      const Vector w = random_weights(rng, 4);
      const std::span<const double> ws(w.data(), 4);
      const auto mean = wfm(spec, ws, pts);
      Matrix residual = Matrix::Zero(n, n);
      for (int k = 0; k < 4; ++k) residual += w[k] * log_map(spec, mean, pts[k]).matrix();
      EXPECT_LE(residual.norm(), 1e-10) << spec.name();

      const auto oracle = cholspace::testing::wfm_oracle(
          [&](const CholeskyPoint& a, const CholeskyPoint& b) { return dist(spec.with_mode(Mode::Raw), a, b); },
          ws, pts);
      EXPECT_LE((oracle.matrix() - mean.matrix()).cwiseAbs().maxCoeff(), 1e-6) << spec.name();
    }
  }
}

TEST(CholeskyWfm, RejectsBadWeights) {
  const std::vector<double> w{0.7, 0.7};
  const std::vector<CholeskyPoint> pts{CholeskyPoint::identity(2), CholeskyPoint::identity(2)};
  EXPECT_EQ(code_of([&] { wfm(CholeskyMetricSpec::cm(), w, pts); }), ErrorCode::BadWeights);
}

TEST(ProductStructure, SlotsDoNotInteract) {
  auto rng = make_rng(36);
  for (const auto& spec : presets(4, rng)) {
    const auto L = random_point(rng, 4);
    const auto K = random_point(rng, 4);
    Matrix k2 = K.matrix();
    k2(2, 2) *= 1.7;
    k2(3, 0) += 0.3;
    const auto base = log_map(spec, L, K).matrix();
    const auto moved = log_map(spec, L, CholeskyPoint(LowerTriangular(k2))).matrix();
    for (Index i = 0; i < 4; ++i) {
      for (Index j = 0; j <= i; ++j) {
        if ((i == 2 && j == 2) || (i == 3 && j == 0)) {
          EXPECT_NE(base(i, j), moved(i, j));
        } else {
          EXPECT_EQ(base(i, j), moved(i, j)) << i << "," << j;
        }
      }
    }
  }
}

TEST(Deformation, GenericTensorMatchesClosedForms) {
  auto rng = make_rng(37);
  const PositiveDiag M = random_diag(rng, 4);
  const std::vector<CholeskyMetricSpec> bases{CholeskyMetricSpec::cm(), CholeskyMetricSpec::dem(1.0),
                                              CholeskyMetricSpec::dgbwm(1.0), CholeskyMetricSpec::dgbwm(1.0, M)};
  for (const auto& base : bases) {
    for (double th : {0.25, 0.5, 1.5, 2.0}) {
      for (int k = 0; k < 20; ++k) {
        const auto L = random_point(rng, 4);
        const auto X = random_tangent(rng, 4);
        const auto Y = random_tangent(rng, 4);
        EXPECT_LE(relative_error(deformed_inner_generic(base, th, L, X, Y), inner(deformed_spec(base, th), L, X, Y)),
                  1e-12);
      }
    }
  }
  EXPECT_EQ(deformed_spec(CholeskyMetricSpec::cm(), 0.3).line, CholeskyMetricSpec::cm().line);
  EXPECT_EQ(deformed_spec(CholeskyMetricSpec::dem(1.0), 0.3).line, CholeskyMetricSpec::dem(0.3).line);
  EXPECT_EQ(code_of([] { deformed_spec(CholeskyMetricSpec::cm(), 0.0); }), ErrorCode::ZeroTheta);
}

TEST(Deformation, SmallThetaBuresWassersteinIsScaledCholeskyMetric) {
  auto rng = make_rng(38);
  const auto spec = CholeskyMetricSpec::dgbwm(1e-4);
  for (int k = 0; k < 50; ++k) {
    const auto L = random_point(rng, 3);
    const auto X = random_tangent(rng, 3);
    const auto Y = random_tangent(rng, 3);
    double expected = (X.strict_lower().array() * Y.strict_lower().array()).sum();
    for (Index i = 0; i < 3; ++i) expected += 0.25 * X(i, i) * Y(i, i) / std::pow(L.matrix()(i, i), 2);
    EXPECT_LE(std::abs(inner(spec, L, X, Y) - expected), 1e-3 * std::abs(expected) + 1e-12);
  }
}

TEST(GbwHalfDemCoincidence, ExpLogTransportBitwise) {
  auto rng = make_rng(39);
  for (double th : {0.5, 1.0, 1.5}) {
    const auto dem = CholeskyMetricSpec::dem(th / 2);
    for (int k = 0; k < 50; ++k) {
      const auto spec = CholeskyMetricSpec::dgbwm(th, random_diag(rng, 3));
      const auto L = random_point(rng, 3);
      const auto K = random_point(rng, 3);
      const auto X = outward_tangent(rng, 3);
      EXPECT_EQ(exp_map(spec, L, X), exp_map(dem, L, X));
      EXPECT_EQ(log_map(spec, L, K), log_map(dem, L, K));
      EXPECT_EQ(transport(spec, L, K, X), transport(dem, L, K, X));
    }
  }
}

TEST(RawMode, NonFiniteResultsPropagate) {
  Matrix l = Matrix::Identity(2, 2);
  l(1, 1) = 1e-300;
  Matrix x = Matrix::Zero(2, 2);
  x(1, 1) = 1.0;
  const CholeskyPoint L(LowerTriangular(l), Mode::Raw);
  const auto G = geodesic(CholeskyMetricSpec::cm(Mode::Raw), L, LowerTriangular(x), 1.0);
  EXPECT_FALSE(G.matrix().allFinite());
  EXPECT_EQ(code_of([&] { geodesic(CholeskyMetricSpec::cm(), CholeskyPoint(LowerTriangular(l)), LowerTriangular(x), 1.0); }),
            ErrorCode::OutOfDomain);
}
