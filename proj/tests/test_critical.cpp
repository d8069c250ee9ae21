#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "milnor/critical.hpp"
#include "milnor/errors.hpp"
#include "support/germs.hpp"
#include "support/oracles.hpp"

namespace milnor {
namespace {

using testing::var;

TEST(ParallelResidual, Ex2TangentialForm) {
  const auto x = var(2, 0), y = var(2, 1);
  const Polynomial r2 = x * x + y * y;
  EXPECT_EQ(parallel_residual(testing::germ_ex2()), r2 * r2 - x * x * y);
  EXPECT_EQ(parallel_residual(testing::germ_a()), Rational(2) * r2 * r2);
}

TEST(ParallelResidual, GermDGramFormAtHandPoint) {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<double> pt{h, 0.0, h, 0.0};
  EXPECT_NEAR(parallel_residual(testing::germ_d()).evaluate(pt), 0.25, 1e-15);
  EXPECT_THROW(parallel_residual(testing::germ_d(), ParallelForm::Tangential), ContractError);
}

TEST(ParallelResidual, GramIsSquareOfTangentialInThePlane) {
  for (const MapGerm& g : {testing::germ_a(), testing::germ_b(), testing::germ_ex2()}) {
    const Polynomial t = parallel_residual(g, ParallelForm::Tangential);
    EXPECT_EQ(parallel_residual(g, ParallelForm::Gram), t * t);
  }
}

TEST(ParallelResidual, GramEqualsSumOfSquaredWedgeMinors) {
  for (const MapGerm& g : {testing::germ_d(), testing::germ_a()}) {
    const PolyVectorField w = omega(g);
    const std::size_t m = g.num_vars();
    Polynomial minors(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const Polynomial mij = w[i] * var(m, j) - w[j] * var(m, i);
        minors += mij * mij;
      }
    }
    EXPECT_EQ(parallel_residual(g, ParallelForm::Gram), minors);
  }
}

TEST(ParallelResidual, GramNonNegativeOnSamples) {
  for (const MapGerm& g : {testing::germ_d(), testing::germ_ex2(), testing::germ_b()}) {
    const Polynomial gram = parallel_residual(g, ParallelForm::Gram);
    const auto deg = gram.total_degree();
    for (std::uint64_t i = 0; i < 500; ++i) {
      auto rng = stream_rng(31, i);
      const Point x = uniform_ball_point(rng, g.num_vars(), 1.0);
      const double scale = std::pow(std::max(norm(x), 1e-3), deg);
      EXPECT_GE(gram.evaluate(x) / scale, -1e-12);
    }
  }
}

TEST(ProjectionJacobian, GermAAtAxisPoint) {
  const auto j = projection_jacobian(testing::germ_a(), std::vector<double>{1.0, 0.0});
  EXPECT_EQ(j[0], (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(j[1], (std::vector<double>{0.0, 2.0}));
}

TEST(ProjectionJacobian, ZeroFirstRowWhereQVanishes) {
  // Q_B = x y^2 vanishes on x = 0.
  const auto j = projection_jacobian(testing::germ_b(), std::vector<double>{0.0, 0.7});
  for (double v : j[0]) EXPECT_EQ(v, 0.0);
}

TEST(ProjectionJacobian, MatchesFiniteDifferencesForEx2) {
  const std::vector<double> pt{0.5, 0.5};
  const auto j = projection_jacobian(testing::germ_ex2(), pt);
  const auto fd = testing::fd_projection_jacobian(testing::germ_ex2(), pt);
  for (int r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) EXPECT_NEAR(j[r][c], fd[r][c], 1e-6);
  }
}

TEST(ProjectionJacobian, SingularOnV) {
  EXPECT_THROW(projection_jacobian(testing::germ_a(), std::vector<double>{0.0, 0.0}), SingularityError);
  EXPECT_THROW(projection_jacobian(testing::germ_d(), std::vector<double>{0.0, 0.0, 0.3, 0.1}), SingularityError);
  EXPECT_THROW(projection_jacobian(testing::germ_a(), std::vector<double>{1.0}), ContractError);
}

TEST(CriticalPoints, Ex2MatchesPolarCurveOracle) {
  constexpr double eps = 0.2;
  const MapGerm g = testing::germ_ex2();
  const auto result = critical_points_on_sphere(g, eps, 64, 7);
  ASSERT_EQ(result.points.size(), 4u);
  const auto expected = testing::ex2_critical_angles(eps);
  std::vector<double> angles;
  const Polynomial curve = parallel_residual(g);
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    EXPECT_NEAR(norm(p), eps, 1e-10 * eps);
    EXPECT_LE(result.residuals[i], 1e-10);
    EXPECT_FALSE(result.omega_zero_flags[i]);
    EXPECT_NEAR(curve.evaluate(p), 0.0, 1e-10);
    EXPECT_LE(projection_submersion_sigma(g, p), 1e-6);
    angles.push_back(std::atan2(p[1], p[0]));
  }
  std::sort(angles.begin(), angles.end());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(angles[i], expected[i], 1e-8);
}

TEST(CriticalPoints, DeterministicForFixedSeed) {
  const auto a = critical_points_on_sphere(testing::germ_ex2(), 0.25, 32, 99);
  const auto b = critical_points_on_sphere(testing::germ_ex2(), 0.25, 32, 99);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.residuals, b.residuals);
}

TEST(CriticalPoints, EmptyForQuasiHomogeneousGerms) {
  for (double eps : {0.1, 0.5, 1.0}) {
    const auto r = critical_points_on_sphere(testing::germ_a(), eps, 64, 1);
    EXPECT_TRUE(r.points.empty()) << eps;
    EXPECT_EQ(r.multistart_count, 64u);
  }
  const auto d = critical_points_on_sphere(testing::germ_d(), 1.0, 200, 1);
  EXPECT_TRUE(d.points.empty());
}

TEST(SubmersionSample, PositiveFloorWhenCriticalSetIsEmpty) {
  // sigma = |omega_perp| / |f|^2 equals 2/eps for A and is at least 2/eps for D.
  for (double eps : {0.1, 0.5, 1.0}) {
    const auto a = submersion_sample(testing::germ_a(), eps, 200, 2);
    EXPECT_NEAR(a.min_sigma, 2.0 / eps, 1e-9 / eps);
    const auto d = submersion_sample(testing::germ_d(), eps, 200, 2);
    EXPECT_GE(d.min_sigma, 2.0 / eps * (1 - 1e-9));
  }
}

TEST(LinkPoints, EmptyLinks) {
  EXPECT_TRUE(link_points(testing::germ_a(), 1.0, 64, 3).points.empty());
  EXPECT_TRUE(link_points(testing::germ_ex2(), 0.5, 64, 3).points.empty());
}

TEST(LinkPoints, GermDLinkIsTwoHopfCircles) {
  const auto s = link_points(testing::germ_d(), 1.0, 64, 3);
  ASSERT_FALSE(s.points.empty());
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& p = s.points[i];
    const double z1 = std::hypot(p[0], p[1]);
    const double z2 = std::hypot(p[2], p[3]);
    EXPECT_LE(std::min(z1, z2), 1e-8);
    EXPECT_NEAR(norm(p), 1.0, 1e-10);
    EXPECT_LE(s.f_norms[i], 1e-10);
  }
}

TEST(Example2PolarRadius, Values) {
  EXPECT_NEAR(example2_polar_radius(std::numbers::pi / 2), 0.0, 1e-16);
  EXPECT_NEAR(example2_polar_radius(std::numbers::pi / 4), std::sqrt(2.0) / 4, 1e-15);
  EXPECT_NEAR(example2_polar_radius(std::asin(1 / std::sqrt(3.0))), 2 / (3 * std::sqrt(3.0)), 1e-15);
  EXPECT_LT(example2_polar_radius(-0.3), 0.0);
}

}  // namespace
}  // namespace milnor
