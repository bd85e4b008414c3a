#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "geonharvest/error.hpp"
#include "geonharvest/quadrature.hpp"

using namespace geonharvest;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

double gk(const std::function<double(double)>& f, double a, double b) {
  return GK::integrate(f, a, b, 20, 1e-13);
}

// Reference for the branch-cut integral: the -i eps prescription replaced by
// a finite eps on the principal square root, y = alpha -+ s^2 substitutions
// on either side of the branch point, then linear extrapolation eps -> 0.
double branchcut_regularized(double alpha, double a, double beta, double eps) {
  auto kernel = [&](double y) {
    // Approaching the cut from above reproduces the principal branch at eps = 0.
    const cplx arg(std::cosh(alpha) - std::cosh(y), eps);
    return (std::exp(cplx(-a * y * y, -beta * y)) / std::sqrt(arg)).real();
  };
  const double s_in = std::sqrt(alpha);
  const double y_max = alpha + std::min(std::sqrt(40.0 / a), 80.0);
  const double s_out = std::sqrt(y_max - alpha);
  auto fin = [&](double s) { return 2.0 * s * kernel(alpha - s * s); };
  auto fout = [&](double s) { return 2.0 * s * kernel(alpha + s * s); };
  // Geometric panels resolve the peak of width ~sqrt(eps) at s = 0.
  // Shallow adaptivity per panel: the relative tolerance can never be met on
  // panels where the integrand has died off.
  auto panels = [&](const auto& f, double end) {
    double lo = 0.0, hi = std::min(end, std::sqrt(eps));
    double sum = GK::integrate(f, lo, hi, 6, 1e-12);
    while (hi < end) {
      lo = hi;
      hi = std::min({end, 2.0 * hi, lo + 0.25});
      sum += GK::integrate(f, lo, hi, 6, 1e-12);
    }
    return sum;
  };
  const double inner = panels(fin, s_in);
  const double outer = panels(fout, s_out);
  return inner + outer;
}

double branchcut_oracle(double alpha, double a, double beta) {
  const double e1 = 1e-4, e2 = 1e-5;
  const double v1 = branchcut_regularized(alpha, a, beta, e1);
  const double v2 = branchcut_regularized(alpha, a, beta, e2);
  return (e1 * v2 - e2 * v1) / (e1 - e2);
}

}  // namespace

TEST(Finite, InverseSqrtEndpoint) {
  const auto r = integrate_finite([](double, double, double b_x) { return 1.0 / std::sqrt(b_x); },
                                  0.0, 1.0);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  const auto l = integrate_finite([](double, double x_a, double) { return 1.0 / std::sqrt(x_a); },
                                  0.0, 1.0);
  EXPECT_NEAR(l.value, 2.0, 1e-12);
}

TEST(Finite, Sine) {
  EXPECT_NEAR(integrate_finite([](double y) { return std::sin(y); }, 0.0, kPi).value, 2.0, 1e-13);
}

TEST(Finite, PolynomialsExact) {
  for (int deg = 0; deg <= 6; ++deg) {
    const auto r = integrate_finite([deg](double x) { return std::pow(x, deg); }, 0.0, 1.0);
    EXPECT_NEAR(r.value, 1.0 / (deg + 1), 1e-12) << "degree " << deg;
  }
}

TEST(Finite, CoshGapAgainstKronrod) {
  const double alpha = 1.0;
  // Against y = alpha (1 - u^2), which removes the singularity.
  auto g = [&](double u) {
    const double y = alpha * (1.0 - u * u);
    return 2.0 * alpha * u /
           std::sqrt(2.0 * std::sinh(0.5 * (alpha + y)) * std::sinh(0.5 * alpha * u * u));
  };
  const double ref = gk([&](double u) { return u == 0.0 ? 2.0 * std::sqrt(alpha / std::sinh(alpha)) : g(u); },
                        0.0, 1.0);
  const auto r = integrate_finite(
      [&](double y, double, double gap) {
        // cosh(alpha) - cosh(y) = 2 sinh((alpha + y) / 2) sinh(gap / 2)
        return 1.0 / std::sqrt(2.0 * std::sinh(0.5 * (alpha + y)) * std::sinh(0.5 * gap));
      },
      0.0, alpha);
  EXPECT_NEAR(r.value, ref, 1e-9);
}

TEST(Finite, ErrorEstimateAndRefinement) {
  const auto r = integrate_finite([](double x) { return std::exp(x) * std::cos(3 * x); }, 0.0, 2.0);
  const double exact = (std::exp(2.0) * (std::cos(6.0) + 3 * std::sin(6.0)) - 1.0) / 10.0;
  EXPECT_NEAR(r.value, exact, 1e-12);
  EXPECT_GE(r.err_estimate, 0.0);
  EXPECT_GE(r.levels, 3);
  EXPECT_GT(r.evaluations, 0);
}

TEST(Finite, Errors) {
  EXPECT_THROW(integrate_finite([](double x) { return x; }, 1.0, 0.0), DomainError);
  QuadratureSpec bad;
  bad.max_levels = 2;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = QuadratureSpec{};
  bad.rel_tol = 0.0;
  EXPECT_THROW(bad.validate(), DomainError);
  QuadratureSpec tight;
  tight.max_levels = 3;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 1e-300;
  try {
    integrate_finite([](double x) { return std::sin(200 * x); }, 0.0, 1.0, tight);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
    EXPECT_GT(e.err_estimate(), 0.0);
  }
}

TEST(SemiInfinite, Gaussians) {
  const auto g = integrate_semi_infinite([](double y) { return std::exp(-y * y); }, 0.0, 1.0);
  EXPECT_NEAR(g.value, std::sqrt(kPi) / 2, 1e-13);
  const auto c = integrate_semi_infinite(
      [](double y) { return std::exp(-y * y) * std::cos(2 * y); }, 0.0, 1.0);
  EXPECT_NEAR(c.value, std::sqrt(kPi) / 2 * std::exp(-1.0), 1e-13);
}

TEST(Thermal, AgainstKronrod) {
  for (double gap : {0.1, 1.0, 3.0})
    for (double temp : {0.2, 1.0, 50.0}) {
      auto f = [&](double y) { return std::exp(-(gap - y) * (gap - y)) / (std::exp(y / temp) + 1.0); };
      const double ref = GK::integrate(f, -std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity(), 20, 1e-14);
      EXPECT_NEAR(integrate_thermal(gap, temp).value, ref, 1e-9) << gap << " " << temp;
    }
  EXPECT_THROW(integrate_thermal(0.1, 0.0), DomainError);
}

TEST(Thermal, InfiniteTemperatureLimit) {
  // Fermi factor -> 1/2.
  EXPECT_NEAR(integrate_thermal(0.3, 1e9).value, std::sqrt(kPi) / 2, 1e-8);
}

TEST(BranchCut, AgainstRegularizedOracleGrid) {
  for (double alpha : {0.5, 1.0, 2.0})
    for (double a : {0.1, 1.0, 10.0})
      for (double beta : {0.0, 1.0, 5.0}) {
        const double ref = branchcut_oracle(alpha, a, beta);
        const double got = integrate_branchcut(alpha, a, beta).value;
        EXPECT_NEAR(got, ref, 1e-7) << "alpha=" << alpha << " a=" << a << " beta=" << beta;
      }
}

TEST(BranchCut, ReferencePointAgainstOracle) {
  EXPECT_NEAR(integrate_branchcut(1.0, 0.25, 1.0).value, branchcut_oracle(1.0, 0.25, 1.0), 1e-7);
}

TEST(BranchCut, DampingKillsSupport) {
  double prev = INFINITY;
  for (double a : {1.0, 10.0, 100.0}) {
    const double v = integrate_branchcut(1.0, a, 0.0).value;
    EXPECT_LT(v, prev);
    EXPECT_GT(v, 0.0);
    prev = v;
  }
}

TEST(BranchCut, ZeroFrequencyIsInnerPieceOnly) {
  const double alpha = 1.3, a = 0.7;
  const auto inner = integrate_finite(
      [&](double y, double, double gap) {
        return std::exp(-a * y * y) /
               std::sqrt(2.0 * std::sinh(0.5 * (alpha + y)) * std::sinh(0.5 * gap));
      },
      0.0, alpha);
  EXPECT_NEAR(integrate_branchcut(alpha, a, 0.0).value, inner.value, 1e-10);
}

TEST(BranchCut, ComplexCosineForm) {
  // Real part is the cos-kernel inner piece; imaginary part minus the outer.
  const double alpha = 0.8, a = 0.3, beta = 2.0;
  const auto c = integrate_branchcut_cos(alpha, a, beta);
  auto outer = [&](double s) {
    const double y = alpha + s * s;
    return 2.0 * s * std::exp(-a * y * y) * std::cos(beta * y) /
           std::sqrt(std::cosh(y) - std::cosh(alpha));
  };
  const double ref_outer = gk([&](double s) { return s == 0.0 ? 2.0 / std::sqrt(std::sinh(alpha)) : outer(s); },
                              0.0, 6.0);
  EXPECT_NEAR(c.value.imag(), -ref_outer, 1e-9);
  auto inner = [&](double u) {
    const double y = alpha * (1.0 - u * u);
    return 2.0 * alpha * u * std::exp(-a * y * y) * std::cos(beta * y) /
           std::sqrt(std::cosh(alpha) - std::cosh(y));
  };
  const double ref_inner = gk([&](double u) {
    return u == 0.0 ? 2.0 * std::sqrt(alpha / std::sinh(alpha)) * std::exp(-a * alpha * alpha) *
                          std::cos(beta * alpha)
                    : inner(u);
  }, 0.0, 1.0);
  EXPECT_NEAR(c.value.real(), ref_inner, 1e-9);
}

TEST(BranchCut, Domain) {
  EXPECT_THROW(integrate_branchcut(0.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(integrate_branchcut(1.0, 0.0, 0.0), DomainError);
}

TEST(ShiftedCosh, AgainstKronrod) {
  for (double z : {-0.5, 1.0, 40.0})
    for (double beta : {0.0, 3.0}) {
      const double a = 0.4;
      auto f = [&](double y) { return std::exp(-a * y * y) * std::cos(beta * y) / std::sqrt(z + std::cosh(y)); };
      const double ref = GK::integrate(f, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-14);
      EXPECT_NEAR(integrate_shifted_cosh(z, a, beta).value, ref, 1e-10);
    }
  EXPECT_THROW(integrate_shifted_cosh(-1.0, 1.0, 0.0), DomainError);
}

TEST(ErrorEstimate, BoundsTrueErrorOnCorpus) {
  // Known integrals; the reported estimate must cover the true error in at
  // least 95% of cases.
  struct Case {
    std::function<double(double)> f;
    double a, b, exact;
  };
  std::vector<Case> corpus;
  for (int k = 1; k <= 10; ++k) {
    corpus.push_back({[k](double x) { return std::cos(k * x); }, 0.0, 1.0, std::sin(k) / k});
    corpus.push_back({[k](double x) { return std::exp(-k * x); }, 0.0, 2.0, (1 - std::exp(-2.0 * k)) / k});
    corpus.push_back({[k](double x) { return 1.0 / (1.0 + k * x * x); }, 0.0, 1.0,
                      std::atan(std::sqrt(k)) / std::sqrt(k)});
  }
  int covered = 0;
  for (const auto& c : corpus) {
    QuadratureSpec loose;
    loose.rel_tol = 1e-6;
    const auto r = integrate_finite(c.f, c.a, c.b, loose);
    if (std::abs(r.value - c.exact) <= std::max(r.err_estimate, 1e-15)) ++covered;
  }
  EXPECT_GE(covered, static_cast<int>(0.95 * corpus.size()));
}
