#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cholspace/gyro.hpp"
#include "test_util.hpp"

using namespace cholspace;
using cholspace::testing::make_rng;
using cholspace::testing::random_point;

namespace {

CholeskyPoint scalar_point(double x) { return CholeskyPoint(LowerTriangular(Matrix::Constant(1, 1, x))); }
double scalar(const CholeskyPoint& p) { return p.matrix()(0, 0); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

// Diagonal near 1 so every family's add predicate holds.
CholeskyPoint near_identity(Rng& rng, Index n) { return random_point(rng, n, 0.8, 1.2); }

std::vector<CholeskyMetricSpec> families() {
  return {CholeskyMetricSpec::cm(),       CholeskyMetricSpec::dem(0.5),   CholeskyMetricSpec::dem(1.0),
          CholeskyMetricSpec::dem(1.5),   CholeskyMetricSpec::dgbwm(1.0), CholeskyMetricSpec::dgbwm(0.5),
          CholeskyMetricSpec::dgbwm(1.5)};
}

}  // namespace

TEST(GyroAdd, LeftIdentity) {
  auto rng = make_rng(40);
  for (const auto& spec : families()) {
    const auto L = random_point(rng, 4);
    EXPECT_LE(relative_error(gyro_add(spec, CholeskyPoint::identity(4), L).matrix(), L.matrix()), 1e-15);
  }
}

TEST(GyroAdd, ScalarExamples) {
  const auto dem1 = CholeskyMetricSpec::dem(1.0);
  EXPECT_DOUBLE_EQ(scalar(gyro_add(dem1, scalar_point(2), scalar_point(3))), 4.0);
  EXPECT_NEAR(scalar(gyro_add_generic(dem1, scalar_point(2), scalar_point(3))), 4.0, 1e-14);
  EXPECT_FALSE(add_defined(dem1, scalar_point(0.3), scalar_point(0.3)));
  EXPECT_EQ(code_of([&] { gyro_add(dem1, scalar_point(0.3), scalar_point(0.3)); }), ErrorCode::GyroDomainError);
  EXPECT_EQ(code_of([&] { gyro_add_generic(dem1, scalar_point(0.3), scalar_point(0.3)); }),
            ErrorCode::GyroDomainError);
  EXPECT_DOUBLE_EQ(scalar(gyro_add(CholeskyMetricSpec::cm(), scalar_point(2), scalar_point(3))), 6.0);
  EXPECT_TRUE(add_defined(CholeskyMetricSpec::cm(), scalar_point(1e-9), scalar_point(1e-9)));
}

TEST(GyroAdd, RawModeSkipsPredicate) {
  const auto raw = CholeskyMetricSpec::dem(1.5, Mode::Raw);
  CholeskyPoint out;
  EXPECT_NO_THROW(out = gyro_add(raw, scalar_point(0.1), scalar_point(0.1)));
  EXPECT_TRUE(std::isnan(scalar(out)));
}

TEST(GyroScale, Examples) {
  auto rng = make_rng(41);
  for (const auto& spec : families()) {
    const auto L = random_point(rng, 3);
    EXPECT_LE(relative_error(gyro_scale(spec, 1.0, L).matrix(), L.matrix()), 1e-15);
    EXPECT_LE(relative_error(gyro_scale(spec, 0.0, L).matrix(), Matrix::Identity(3, 3)), 1e-15);
  }
  const auto dem1 = CholeskyMetricSpec::dem(1.0);
  EXPECT_DOUBLE_EQ(scalar(gyro_scale(dem1, 2.0, scalar_point(3))), 5.0);
  EXPECT_NEAR(scalar(gyro_scale_generic(dem1, 2.0, scalar_point(3))), 5.0, 1e-14);
  EXPECT_FALSE(scale_defined(dem1, 3.0, scalar_point(0.5)));
  EXPECT_EQ(code_of([&] { gyro_scale(dem1, 3.0, scalar_point(0.5)); }), ErrorCode::GyroDomainError);
  EXPECT_DOUBLE_EQ(scalar(gyro_scale(CholeskyMetricSpec::cm(), 2.0, scalar_point(3))), 9.0);
}

TEST(GyroInverse, Examples) {
  const auto dem1 = CholeskyMetricSpec::dem(1.0);
  for (const auto& spec : families()) {
    EXPECT_EQ(gyro_inverse(spec, CholeskyPoint::identity(3)).matrix(), Matrix::Identity(3, 3));
  }
  EXPECT_DOUBLE_EQ(scalar(gyro_inverse(dem1, scalar_point(1.5))), 0.5);
  EXPECT_DOUBLE_EQ(scalar(gyro_add(dem1, scalar_point(0.5), scalar_point(1.5))), 1.0);
  for (double th : {0.5, 1.5}) {
    const auto dem = CholeskyMetricSpec::dem(th);
    const double edge = std::pow(2.0, 1.0 / th);
    EXPECT_FALSE(inverse_defined(dem, scalar_point(edge * 1.01)));
    EXPECT_TRUE(inverse_defined(dem, scalar_point(edge * 0.99)));
    EXPECT_EQ(code_of([&] { gyro_inverse(dem, scalar_point(edge * 1.01)); }), ErrorCode::GyroDomainError);
  }
  // The GBW family uses θ/2, so its boundary is 2^{2/θ}.
  EXPECT_FALSE(inverse_defined(CholeskyMetricSpec::dgbwm(1.0), scalar_point(4.01)));
  EXPECT_TRUE(inverse_defined(CholeskyMetricSpec::dgbwm(1.0), scalar_point(3.99)));
}

TEST(GyroInverse, CancelsOnTheLeft) {
  auto rng = make_rng(42);
  for (const auto& spec : families()) {
    for (int k = 0; k < 50; ++k) {
      const auto L = near_identity(rng, 4);
      const auto inv = gyro_inverse(spec, L);
      EXPECT_LE(relative_error(gyro_add(spec, inv, L).matrix(), Matrix::Identity(4, 4)), 1e-12) << spec.name();
      EXPECT_LE(relative_error(inv.matrix(), gyro_scale(spec, -1.0, L).matrix()), 1e-15);
    }
  }
}

TEST(Gyration, IsIdentity) {
  auto rng = make_rng(43);
  for (const auto& spec : families()) {
    for (int k = 0; k < 50; ++k) {
      const auto L = near_identity(rng, 3);
      const auto K = near_identity(rng, 3);
      const auto J = near_identity(rng, 3);
      EXPECT_EQ(gyr(spec, L, K, J), J);
      EXPECT_LE(relative_error(gyr_expression(spec, L, K, J).matrix(), J.matrix()), 1e-12) << spec.name();
    }
    const auto I = CholeskyPoint::identity(3);
    const auto J = near_identity(rng, 3);
    EXPECT_LE(relative_error(gyr_expression(spec, I, I, J).matrix(), J.matrix()), 1e-15);
  }
}

TEST(GyroAdd, CommutativeAndAssociative) {
  auto rng = make_rng(44);
  for (const auto& spec : families()) {
    for (int k = 0; k < 50; ++k) {
      const auto L = near_identity(rng, 4);
      const auto K = near_identity(rng, 4);
      const auto J = near_identity(rng, 4);
      EXPECT_LE(relative_error(gyro_add(spec, L, K).matrix(), gyro_add(spec, K, L).matrix()), 1e-12);
      EXPECT_LE(relative_error(gyro_add(spec, L, gyro_add(spec, K, J)).matrix(),
                               gyro_add(spec, gyro_add(spec, L, K), J).matrix()),
                1e-12);
    }
  }
}

TEST(GyroClosedForms, MatchGenericComposition) {
  auto rng = make_rng(45);
  for (const auto& spec : families()) {
    for (int k = 0; k < 50; ++k) {
      const auto L = near_identity(rng, 4);
      const auto K = near_identity(rng, 4);
      const double t = uniform(rng, -1.0, 1.0);
      EXPECT_LE(relative_error(gyro_add(spec, L, K).matrix(), gyro_add_generic(spec, L, K).matrix()), 1e-12)
          << spec.name();
      EXPECT_LE(relative_error(gyro_scale(spec, t, L).matrix(), gyro_scale_generic(spec, t, L).matrix()), 1e-12)
          << spec.name();
    }
  }
}

TEST(GyroScale, DistributiveSpotCase) {
  auto rng = make_rng(46);
  for (const auto& spec : families()) {
    const auto L = near_identity(rng, 3);
    EXPECT_LE(relative_error(gyro_scale(spec, 0.5, L).matrix(),
                             gyro_add(spec, gyro_scale(spec, 0.25, L), gyro_scale(spec, 0.25, L)).matrix()),
              1e-12);
  }
}

TEST(GyroBuresWasserstein, IndependentOfWeights) {
  auto rng = make_rng(47);
  for (double th : {0.5, 1.0, 1.5}) {
    const auto base = CholeskyMetricSpec::dgbwm(th);
    for (int k = 0; k < 20; ++k) {
      Vector m(3);
      for (Index i = 0; i < 3; ++i) m[i] = uniform(rng, 0.1, 10.0);
      const auto weighted = CholeskyMetricSpec::dgbwm(th, PositiveDiag(m));
      const auto L = near_identity(rng, 3);
      const auto K = near_identity(rng, 3);
      EXPECT_EQ(gyro_add(weighted, L, K), gyro_add(base, L, K));
      EXPECT_EQ(gyro_scale(weighted, 0.7, L), gyro_scale(base, 0.7, L));
      EXPECT_EQ(gyro_inverse(weighted, L), gyro_inverse(base, L));
      // Same operations as (θ/2)-DEM.
      EXPECT_EQ(gyro_add(weighted, L, K), gyro_add(CholeskyMetricSpec::dem(th / 2), L, K));
    }
  }
}

TEST(AxiomSuite, AllFamiliesPass) {
  for (const auto& spec : families()) {
    for (Index n : {1, 3}) {
      const AxiomReport report = axiom_suite(spec, n, 7, 200);
      EXPECT_TRUE(report.all_passed()) << spec.name() << " worst " << report.worst_residual();
      EXPECT_LE(report.worst_residual(), 1e-10);
      EXPECT_EQ(report.skipped, 0);
      for (const char* axiom : {"G1_left_identity", "G2_left_inverse", "G3_left_gyroassociative",
                                "G4_left_reduction", "gyrocommutative_law", "V1_scalar_identities",
                                "V2_scalar_distributive", "V3_scalar_associative",
                                "V4_gyration_commutes_with_scaling", "V5_trivial_gyration_on_a_line",
                                "gyr_is_identity", "closed_form_add_matches_generic",
                                "closed_form_scale_matches_generic"}) {
        ASSERT_TRUE(report.axioms.contains(axiom)) << axiom;
        EXPECT_EQ(report.axioms.at(axiom).passed, 200) << spec.name() << " " << axiom;
      }
    }
  }
}

TEST(AxiomSuite, DeterministicInSeed) {
  const auto spec = CholeskyMetricSpec::dem(0.5);
  const auto a = axiom_suite(spec, 3, 11, 50);
  const auto b = axiom_suite(spec, 3, 11, 50);
  EXPECT_EQ(a.worst_residual(), b.worst_residual());
}
