#include <gtest/gtest.h>

#include <cmath>

#include "geonharvest/error.hpp"
#include "geonharvest/geometry.hpp"

using namespace geonharvest;

TEST(Horizon, Examples) {
  EXPECT_DOUBLE_EQ(horizon_radius(1.0, 10.0), 10.0);
  EXPECT_DOUBLE_EQ(horizon_radius(0.01, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(horizon_radius(1.0, 1.0), 1.0);
}

TEST(Horizon, ScalesAsRootMass) {
  for (double m : {1e-4, 0.3, 2.0})
    for (double l : {0.5, 10.0}) EXPECT_EQ(horizon_radius(4 * m, l), 2 * horizon_radius(m, l));
}

TEST(Horizon, RejectsNonPositive) {
  EXPECT_THROW(horizon_radius(0.0, 10.0), DomainError);
  EXPECT_THROW(horizon_radius(1.0, -1.0), DomainError);
  EXPECT_THROW(horizon_radius(NAN, 1.0), DomainError);
}

TEST(Params, Validation) {
  EXPECT_NO_THROW((SpacetimeParams{0.01, 10.0, -1, Family::Geon}.validate()));
  EXPECT_THROW((SpacetimeParams{0.01, 10.0, 2, Family::BTZ}.validate()), DomainError);
  EXPECT_THROW((SpacetimeParams{-1.0, 10.0, 1, Family::BTZ}.validate()), DomainError);
  EXPECT_EQ(family_from_string("geon"), Family::Geon);
  EXPECT_EQ(to_string(Family::BTZ), "btz");
  EXPECT_THROW(family_from_string("ads"), DomainError);
}

TEST(Redshift, DirectFormula) {
  const SpacetimeParams p{0.01, 10.0, 1, Family::BTZ};  // r_h = 1
  EXPECT_NEAR(redshift(2.0, p), std::sqrt(3.0) / 10.0, 1e-15);
}

TEST(Redshift, HorizonLimitAndOutside) {
  const SpacetimeParams p{0.01, 10.0, 1, Family::BTZ};
  EXPECT_LT(redshift(1.0 + 1e-12, p), 1e-6);
  EXPECT_GT(redshift(1.0 + 1e-12, p), 0.0);
  EXPECT_THROW(redshift(1.0, p), DomainError);
  EXPECT_THROW(redshift(0.5, p), DomainError);
}

TEST(Redshift, MonotoneAndAsymptotic) {
  const SpacetimeParams p{1.0, 10.0, 1, Family::BTZ};
  double prev = 0.0;
  for (double r = 10.001; r < 1e3; r *= 1.3) {
    const double g = redshift(r, p);
    EXPECT_GT(g, prev);
    prev = g;
  }
  const double big = 2e4 * p.horizon();
  EXPECT_LT(std::abs(redshift(big, p) / (big / p.ads_length) - 1.0), 1e-6);
}

TEST(ProperDistance, Examples) {
  const SpacetimeParams unit{1.0, 1.0, 1, Family::BTZ};  // r_h = 1, l = 1
  EXPECT_EQ(proper_distance(1.7, 1.7, unit), 0.0);
  EXPECT_NEAR(distance_from_horizon(std::cosh(1.0), unit), 1.0, 1e-14);

  const SpacetimeParams p{0.01, 10.0, 1, Family::BTZ};  // r_h = 1, l = 10
  const double d12 = proper_distance(1.5, 2.0, p);
  const double d23 = proper_distance(2.0, 3.0, p);
  const double d13 = proper_distance(1.5, 3.0, p);
  EXPECT_NEAR(d12 + d23, d13, 1e-12);
}

TEST(ProperDistance, Ordering) {
  const SpacetimeParams p{0.01, 10.0, 1, Family::BTZ};
  EXPECT_THROW(proper_distance(2.0, 1.5, p), DomainError);
  EXPECT_THROW(proper_distance(0.5, 1.5, p), DomainError);
  EXPECT_GT(proper_distance(1.5, 2.5, p), proper_distance(1.5, 2.0, p));
  EXPECT_LT(proper_distance(1.7, 2.5, p), proper_distance(1.5, 2.5, p));
}

TEST(RadiusFromDistance, Examples) {
  const SpacetimeParams p{0.01, 10.0, 1, Family::BTZ};
  EXPECT_EQ(radius_from_distance(0.0, p), 1.0);
  EXPECT_NEAR(radius_from_distance(1.0, p), std::cosh(0.1), 1e-15);
  EXPECT_THROW(radius_from_distance(-0.1, p), DomainError);
}

TEST(RadiusFromDistance, RoundTrip) {
  for (double m : {1e-4, 0.01, 1.0, 10.0}) {
    const SpacetimeParams p{m, 10.0, 1, Family::BTZ};
    for (double d = 0.05; d <= 20.0; d *= 1.25) {
      const double r = radius_from_distance(d, p);
      EXPECT_NEAR(distance_from_horizon(r, p) / d, 1.0, 1e-10) << "M=" << m << " d=" << d;
      EXPECT_NEAR(radius_from_distance(distance_from_horizon(r, p), p) / r, 1.0, 1e-12);
    }
  }
  // Proper distance sigma from the horizon at M = 0.01.
  const SpacetimeParams p{0.01, 10.0, 1, Family::BTZ};
  const double r = radius_from_distance(1.0, p);
  EXPECT_NEAR(redshift(r, p), std::sinh(0.1) / 10.0, 1e-12);
}

TEST(Pair, Construction) {
  const SpacetimeParams p{0.01, 10.0, 1, Family::BTZ};
  const DetectorPair pair = pair_at_distance(1.0, 0.5, 0.1, p);
  EXPECT_NEAR(proper_distance(pair.a.radius, pair.b.radius, p), 0.5, 1e-12);
  EXPECT_NO_THROW(validate(pair, p));
  EXPECT_THROW(validate(DetectorPair{pair.b, pair.a}, p), DomainError);
  DetectorPair skew = pair;
  skew.b.angle = 0.3;
  EXPECT_THROW(validate(skew, p), DomainError);
  skew = pair;
  skew.b.gap = 0.2;
  EXPECT_THROW(validate(skew, p), DomainError);
  EXPECT_THROW(pair_at_distance(0.0, 0.5, 0.1, p), DomainError);
  EXPECT_THROW(pair_at_distance(1.0, 0.0, 0.1, p), DomainError);
}
