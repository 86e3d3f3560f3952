#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "powersph/errors.hpp"
#include "powersph/sphere.hpp"

using namespace powersph;
using powersph::testing::RunningStats;
using powersph::testing::within_se;

TEST(Direction, Construction) {
  EXPECT_NO_THROW(Direction::from_unit({0.6, 0.8}));
  EXPECT_THROW(Direction::from_unit({0.6, 0.81}), DomainError);
  EXPECT_THROW(Direction::normalized({0.0, 0.0}), DomainError);
  EXPECT_THROW(Direction::normalized({NAN, 1.0}), DomainError);
  const auto d = Direction::normalized({3.0, 4.0});
  EXPECT_NEAR(d[0], 0.6, 1e-15);
  EXPECT_NEAR(d[1], 0.8, 1e-15);
  const auto e = Direction::basis(4, 2);
  EXPECT_EQ(e[2], 1.0);
  EXPECT_EQ(e[0], 0.0);
}

TEST(Householder, IdentityForE1) {
  const auto mu = Direction::basis(3, 0);
  const std::vector<double> y{0.6, 0.0, 0.8};
  EXPECT_EQ(householder_reflect(y, mu), y);
}

TEST(Householder, NegativeE1NegatesFirstCoordinate) {
  const auto mu = Direction::from_unit({-1.0, 0.0});
  const auto out = householder_reflect(std::vector<double>{0.6, 0.8}, mu);
  EXPECT_NEAR(out[0], -0.6, 1e-15);
  EXPECT_NEAR(out[1], 0.8, 1e-15);
}

TEST(Householder, MapsE1ToMuProperty) {
  RandomStream rng(11);
  for (std::size_t d : {2u, 3u, 64u}) {
    for (int i = 0; i < 1000; ++i) {
      const auto mu = Direction::random(d, rng);
      std::vector<double> e1(d, 0.0);
      e1[0] = 1.0;
      const auto out = householder_reflect(e1, mu);
      for (std::size_t k = 0; k < d; ++k) ASSERT_NEAR(out[k], mu[k], 1e-12) << d;
    }
  }
}

TEST(Householder, PreservesNorm) {
  RandomStream rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto mu = Direction::random(10, rng);
    const auto y = Direction::random(10, rng);
    EXPECT_NEAR(norm(householder_reflect(y.values(), mu)), 1.0, 1e-14);
  }
}

TEST(Householder, NearE1StaysAccurate) {
  // mu within 1e-9 of e1: head = 1 - mu_0 must not cancel.
  const auto mu = Direction::normalized({1.0, 1e-9, 0.0});
  std::vector<double> e1{1.0, 0.0, 0.0};
  const auto out = householder_reflect(e1, mu);
  EXPECT_NEAR(out[1], mu[1], 1e-20);
  EXPECT_NEAR(out[0], mu[0], 1e-15);
}

TEST(UniformSubsphere, OneCoordinateIsSign) {
  RandomStream rng(13);
  int plus = 0;
  for (int i = 0; i < 10000; ++i) {
    const double v = sample_uniform_subsphere(1, rng)[0];
    ASSERT_TRUE(v == 1.0 || v == -1.0);
    plus += v > 0.0;
  }
  EXPECT_NEAR(plus, 5000, 150);  // 3 SE of a fair binomial
}

TEST(UniformSubsphere, CoordinateMeansVanish) {
  RandomStream rng(14);
  std::vector<RunningStats> stats(3);
  for (int i = 0; i < 100000; ++i) {
    const auto v = sample_uniform_subsphere(3, rng);
    ASSERT_NEAR(norm(v.values()), 1.0, 1e-14);
    for (int k = 0; k < 3; ++k) stats[k].add(v[k]);
  }
  for (const auto& s : stats) EXPECT_TRUE(within_se(0.0, s.mean(), s.standard_error()));
}

TEST(UniformSubsphere, CircleAngleIsUniform) {
  RandomStream rng(15);
  std::vector<double> angles;
  for (int i = 0; i < 100000; ++i) {
    const auto v = sample_uniform_subsphere(2, rng);
    double a = std::atan2(v[1], v[0]);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    angles.push_back(a);
  }
  const double ks = powersph::testing::ks_statistic(
      angles, [](double a) { return a / (2.0 * std::numbers::pi); });
  EXPECT_GT(powersph::testing::ks_pvalue(ks, angles.size()), 0.01);
}

TEST(SphereArea, ClosedForms) {
  EXPECT_NEAR(log_sphere_area(2), std::log(2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(log_sphere_area(3), std::log(4.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(log_sphere_area(4), std::log(2.0 * std::numbers::pi * std::numbers::pi), 1e-14);
}
