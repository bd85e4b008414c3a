#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "geonharvest/error.hpp"
#include "geonharvest/wightman.hpp"

using namespace geonharvest;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

const SpacetimeParams kSmall{0.01, 10.0, 1, Family::BTZ};  // r_h = 1
const SpacetimeParams kLarge{1.0, 10.0, 1, Family::BTZ};   // r_h = 10

ImageSumControl fixed(int n) {
  ImageSumControl c;
  c.automatic = false;
  c.n_max = n;
  return c;
}

}  // namespace

TEST(Sigma, CoincidenceLimits) {
  const SpacetimeEvent x{0.3, 2.5, 0.7};
  EXPECT_NEAR(std::abs(sigma_n(x, x, 0, kSmall, 0.0)), 0.0, 1e-14);
  for (int n : {-2, 1, 3}) {
    const double expected = 2.5 * 2.5 * (std::cosh(2 * kPi * n * 1.0 / 10.0) - 1.0);
    const cplx s = sigma_n(x, x, n, kSmall, 0.0);
    EXPECT_NEAR(s.real(), expected, 1e-12 * expected);
    EXPECT_EQ(s.imag(), 0.0);
  }
}

TEST(Sigma, IndependentEvaluation) {
  // r = r' = 2 r_h, dt = 1, n = 1, M = 0.01, l = 10.
  const SpacetimeEvent x{1.0, 2.0, 0.0}, xp{0.0, 2.0, 0.0};
  const double rh = 1.0, l = 10.0, r = 2.0;
  const double direct = (r * r / (rh * rh)) * std::cosh(rh / l * (-2 * kPi)) - 1.0 -
                        (r * r - rh * rh) / (rh * rh) * std::cosh(rh / (l * l) * 1.0);
  EXPECT_NEAR(sigma_n(x, xp, 1, kSmall, 0.0).real(), direct, 1e-13);
}

TEST(Sigma, AngleImageReflection) {
  const SpacetimeEvent x{0.4, 1.7, 0.9}, xp{-0.2, 2.9, 0.1};
  const SpacetimeEvent xr{0.4, 1.7, -0.9}, xpr{-0.2, 2.9, -0.1};
  for (int n : {0, 1, 4})
    EXPECT_EQ(sigma_n(x, xp, n, kSmall, 1e-3), sigma_n(xr, xpr, -n, kSmall, 1e-3));
}

TEST(Sigma, ImaginaryPartSign) {
  for (double dt : {-5.0, -0.1, 0.2, 3.0}) {
    const SpacetimeEvent x{dt, 1.8, 0.0}, xp{0.0, 1.8, 0.0};
    for (double eps : {1e-3, 0.1}) {
      const double im = sigma_n(x, xp, 1, kSmall, eps).imag();
      EXPECT_GT(im * eps * std::sinh(dt), 0.0) << dt;
    }
  }
}

TEST(SigmaTilde, DirectSubstitution) {
  const double R = 1.7;
  const SpacetimeEvent x{0.0, R, 0.0};
  const double expected = R * R * std::cosh(kPi / 10.0) - 1.0 + (R * R - 1.0);
  EXPECT_NEAR(sigma_tilde_n(x, x, 0, kSmall), expected, 1e-13);
}

TEST(SigmaTilde, SwapSymmetry) {
  const SpacetimeEvent x{0.5, 1.3, 0.0}, xp{-1.5, 3.1, 0.0};
  const SpacetimeEvent y{0.5, 1.3, 0.4}, yp{-1.5, 3.1, 0.1};
  for (int n : {-3, -1, 0, 2}) {
    EXPECT_DOUBLE_EQ(sigma_tilde_n(x, xp, n, kSmall), sigma_tilde_n(xp, x, -1 - n, kSmall));
    EXPECT_DOUBLE_EQ(sigma_tilde_n(y, yp, n, kSmall), sigma_tilde_n(yp, y, -1 - n, kSmall));
  }
}

TEST(SigmaTilde, PositiveNearHorizon) {
  const SpacetimeEvent x{0.0, 1.005, 0.0};
  EXPECT_GT(sigma_tilde_n(x, x, 0, kSmall), 0.0);
  for (int n = -5; n < 5; ++n) EXPECT_GT(sigma_tilde_n(x, x, n, kSmall), 0.0);
}

TEST(ImageTerms, TransparentBoundary) {
  SpacetimeParams p = kSmall;
  p.zeta = 0;
  const SpacetimeEvent x{0.3, 1.5, 0.0}, xp{0.0, 2.2, 0.0};
  for (int n : {0, 1, -2}) {
    const cplx s = sigma_n(x, xp, n, p, 1e-2);
    EXPECT_EQ(btz_image_term(x, xp, n, p, 1e-2), 1.0 / std::sqrt(s));
    EXPECT_EQ(geon_image_term(x, xp, n, p), 1.0 / std::sqrt(sigma_tilde_n(x, xp, n, p)));
  }
}

TEST(ImageTerms, GeonBracketPositive) {
  SpacetimeParams p = kSmall;
  p.family = Family::Geon;
  const SpacetimeEvent x{0.0, 1.3, 0.0}, xp{0.0, 2.0, 0.0};
  for (int n = -4; n < 4; ++n) EXPECT_GT(geon_image_term(x, xp, n, p), 0.0);
}

TEST(Wightman, Hermitian) {
  for (Family f : {Family::BTZ, Family::Geon}) {
    SpacetimeParams p = kSmall;
    p.family = f;
    const SpacetimeEvent x{1.2, 1.4, 0.0}, xp{-0.7, 2.6, 0.0};
    const cplx w1 = wightman(x, xp, p, 1e-2);
    const cplx w2 = wightman(xp, x, p, 1e-2);
    EXPECT_NEAR(std::abs(w1 - std::conj(w2)), 0.0, 1e-12 * std::abs(w1));
  }
}

TEST(Wightman, GeonIsBtzPlusImages) {
  SpacetimeParams geon = kSmall;
  geon.family = Family::Geon;
  const SpacetimeEvent x{0.2, 1.4, 0.0}, xp{0.1, 2.0, 0.0};
  const auto ctl = fixed(30);
  const cplx diff = wightman(x, xp, geon, 1e-3, ctl) - wightman(x, xp, kSmall, 1e-3, ctl);
  double images = 0.0;
  for (int n = 0; n < 30; ++n)
    images += geon_image_term(x, xp, n, geon) + geon_image_term(x, xp, -1 - n, geon);
  EXPECT_NEAR(diff.real(), wightman_prefactor(geon) * images, 1e-14);
  EXPECT_NEAR(diff.imag(), 0.0, 1e-15);
}

TEST(Wightman, GeonCorrectionTinyAtLargeMass) {
  SpacetimeParams geon = kLarge;
  geon.family = Family::Geon;
  const SpacetimeEvent x{0.0, 20.0, 0.0};
  const cplx btz = wightman(x, x, kLarge, 1e-2);
  const cplx total = wightman(x, x, geon, 1e-2);
  EXPECT_LT(std::abs(total - btz) / std::abs(btz), 1e-3);
  // Correction real and positive at t = t' = 0.
  EXPECT_GT((total - btz).real(), 0.0);
  EXPECT_NEAR((total - btz).imag(), 0.0, 1e-15);
}

TEST(Wightman, PartialSumsConverge) {
  const SpacetimeParams p{0.25, 10.0, 1, Family::BTZ};
  const SpacetimeEvent x{0.5, 6.0, 0.0}, xp{0.0, 8.0, 0.0};
  double prev = INFINITY;
  cplx last = wightman(x, xp, p, 1e-3, fixed(1));
  for (int n = 2; n <= 12; ++n) {
    const cplx cur = wightman(x, xp, p, 1e-3, fixed(n));
    const double step = std::abs(cur - last);
    if (step < 1e-15 * std::abs(cur)) break;
    EXPECT_LT(step, prev);
    if (n > 2) {
      EXPECT_LE(step / prev, std::exp(-kPi * std::sqrt(p.mass)));
    }
    prev = step;
    last = cur;
  }
}

TEST(Wightman, Errors) {
  const SpacetimeEvent inside{0.0, 0.5, 0.0}, x{0.0, 2.0, 0.0};
  EXPECT_THROW(wightman(inside, x, kSmall, 1e-3), DomainError);
  EXPECT_THROW(wightman(x, x, kSmall, 1e-3, fixed(kMaxImageIndex + 1)), NumericalError);
  EXPECT_THROW(wightman(x, x, SpacetimeParams{1e-6, 10.0, 1, Family::BTZ}, 1e-3), DomainError);
}

TEST(TruncationBound, Examples) {
  EXPECT_LE(truncation_bound(1.0, 10.0, 1e-12), 10);
  EXPECT_GE(truncation_bound(1.0, 10.0, 1e-12), 1);
  const int tiny = truncation_bound(1e-4, 10.0, 1e-3);
  EXPECT_GE(tiny, 100);
  EXPECT_LT(tiny, 1000);
  EXPECT_THROW(truncation_bound(1e-4, 10.0, 1e-12), DomainError);
  EXPECT_THROW(truncation_bound(0.0, 10.0, 1e-3), DomainError);
}

TEST(TruncationBound, ScalingAndMonotone) {
  int prev = truncation_bound(1e-3, 10.0, 1e-12);
  for (double m = 2e-3; m < 30.0; m *= 2.0) {
    const int n = truncation_bound(m, 10.0, 1e-12);
    EXPECT_LE(n, prev);
    prev = n;
  }
  const double ratio = static_cast<double>(truncation_bound(0.04, 10.0, 1e-30)) /
                       truncation_bound(0.01, 10.0, 1e-30);
  EXPECT_NEAR(ratio, 0.5, 0.05);
}
