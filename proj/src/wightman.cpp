#include "geonharvest/wightman.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "geonharvest/error.hpp"

namespace geonharvest {

namespace {

using cplx = std::complex<double>;

void check_exterior(const SpacetimeEvent& x, double rh) {
  if (!(x.r > rh))
    throw DomainError("Wightman function: event must lie outside the horizon");
}

double lapse(double r, double rh) { return std::sqrt((r - rh) * (r + rh)); }

}  // namespace

cplx sigma_n(const SpacetimeEvent& x, const SpacetimeEvent& xp, int n,
             const SpacetimeParams& p, double eps) {
  const double rh = p.horizon();
  const double l = p.ads_length;
  check_exterior(x, rh);
  check_exterior(xp, rh);
  const double angular = x.r * xp.r / (rh * rh) *
                         std::cosh(rh / l * (x.phi - xp.phi - 2.0 * std::numbers::pi * n));
  const double radial = lapse(x.r, rh) * lapse(xp.r, rh) / (rh * rh);
  const cplx time_arg(rh / (l * l) * (x.t - xp.t), -eps);
  return angular - 1.0 - radial * std::cosh(time_arg);
}

double sigma_tilde_n(const SpacetimeEvent& x, const SpacetimeEvent& xp, int n,
                     const SpacetimeParams& p) {
  const double rh = p.horizon();
  const double l = p.ads_length;
  check_exterior(x, rh);
  check_exterior(xp, rh);
  const double angular =
      x.r * xp.r / (rh * rh) *
      std::cosh(rh / l * (x.phi - xp.phi - 2.0 * std::numbers::pi * (n + 0.5)));
  const double radial = lapse(x.r, rh) * lapse(xp.r, rh) / (rh * rh);
  return angular - 1.0 + radial * std::cosh(rh / (l * l) * (x.t + xp.t));
}

cplx btz_image_term(const SpacetimeEvent& x, const SpacetimeEvent& xp, int n,
                    const SpacetimeParams& p, double eps) {
  const cplx s = sigma_n(x, xp, n, p, eps);
  cplx term = 1.0 / std::sqrt(s);
  if (p.zeta != 0) term -= static_cast<double>(p.zeta) / std::sqrt(s + 2.0);
  return term;
}

double geon_image_term(const SpacetimeEvent& x, const SpacetimeEvent& xp, int n,
                       const SpacetimeParams& p) {
  const double s = sigma_tilde_n(x, xp, n, p);
  if (!(s > 0.0))
    throw NumericalError("geon image " + std::to_string(n) +
                         " is null or timelike separated (sigma_tilde <= 0)");
  double term = 1.0 / std::sqrt(s);
  if (p.zeta != 0) term -= p.zeta / std::sqrt(s + 2.0);
  return term;
}

double wightman_prefactor(const SpacetimeParams& p) {
  return 1.0 / (4.0 * std::numbers::pi * std::numbers::sqrt2 * p.ads_length);
}

cplx wightman(const SpacetimeEvent& x, const SpacetimeEvent& xp,
              const SpacetimeParams& p, double eps, const ImageSumControl& ctl) {
  p.validate();
  const int n_max = ctl.automatic
                        ? truncation_bound(p.mass, p.ads_length, ctl.tol)
                        : ctl.n_max;
  if (n_max < 0) throw DomainError("image-sum n_max must be nonnegative");
  if (n_max > kMaxImageIndex)
    throw NumericalError("image sum exceeds the hard cap of " +
                         std::to_string(kMaxImageIndex) + " terms");

  // Pairs are accumulated from the outermost image inward.
  cplx sum = 0.0;
  for (int n = n_max; n >= 1; --n) {
    sum += btz_image_term(x, xp, n, p, eps) + btz_image_term(x, xp, -n, p, eps);
  }
  sum += btz_image_term(x, xp, 0, p, eps);

  if (p.family == Family::Geon) {
    double geon = 0.0;
    for (int n = n_max - 1; n >= 0; --n) {
      geon += geon_image_term(x, xp, n, p) + geon_image_term(x, xp, -1 - n, p);
    }
    sum += geon;
  }
  return wightman_prefactor(p) * sum;
}

int truncation_bound(double mass, double ads_length, double target_tol) {
  if (!(mass > 0.0)) throw DomainError("truncation_bound: mass must be positive");
  if (!(ads_length > 0.0))
    throw DomainError("truncation_bound: AdS length must be positive");
  if (!(target_tol > 0.0))
    throw DomainError("truncation_bound: tolerance must be positive");
  const double rate = std::numbers::pi * std::sqrt(mass);
  // |n = 1 term| ~ (cosh(2 pi sqrt M) - 1)^{-1/2} = C e^{-rate}.
  const double c = std::exp(rate) / std::sqrt(std::cosh(2.0 * rate) - 1.0) /
                   (4.0 * std::numbers::pi * std::numbers::sqrt2 * ads_length);
  if (c < target_tol) return 0;
  const int n = static_cast<int>(std::floor(std::log(c / target_tol) / rate)) + 1;
  if (n > kMaxImageIndex)
    throw DomainError("truncation_bound: M = " + std::to_string(mass) +
                      " needs more than " + std::to_string(kMaxImageIndex) +
                      " image terms at this tolerance; loosen the tolerance");
  return n;
}

}  // namespace geonharvest
