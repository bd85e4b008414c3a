#pragma once

#include <complex>

#include "geonharvest/geometry.hpp"

namespace geonharvest {

// A point of the exterior region in Schwarzschild-like coordinates.
struct SpacetimeEvent {
  double t = 0.0;
  double r = 0.0;
  double phi = 0.0;
};

struct ImageSumControl {
  // Terms n = -n_max..n_max (BTZ) and n = -n_max..n_max-1 (geon images).
  int n_max = 0;
  // When set, n_max comes from truncation_bound(M, l, tol).
  bool automatic = true;
  double tol = 1e-12;
};

// Hard cap on the image-sum index.
inline constexpr int kMaxImageIndex = 500;

// AdS_3 invariant between x and the n-th BTZ image of x'. The time
// difference carries the -i eps prescription.
std::complex<double> sigma_n(const SpacetimeEvent& x, const SpacetimeEvent& xp,
                             int n, const SpacetimeParams& p, double eps);

// Invariant between x and the n-th image of J(x') (geon identification).
// Depends on t + t'; no eps prescription.
double sigma_tilde_n(const SpacetimeEvent& x, const SpacetimeEvent& xp, int n,
                     const SpacetimeParams& p);

// sigma^{-1/2} - zeta (sigma + 2)^{-1/2}, principal branch.
std::complex<double> btz_image_term(const SpacetimeEvent& x,
                                    const SpacetimeEvent& xp, int n,
                                    const SpacetimeParams& p, double eps);

// Same kernel on sigma_tilde_n. Throws NumericalError if sigma_tilde_n <= 0.
double geon_image_term(const SpacetimeEvent& x, const SpacetimeEvent& xp, int n,
                       const SpacetimeParams& p);

// Prefactor 1 / (4 pi sqrt(2) l) of every image term.
double wightman_prefactor(const SpacetimeParams& p);

// Wightman function of the conformally coupled scalar in the Hartle-Hawking
// state; includes the geon images when p.family == Geon.
std::complex<double> wightman(const SpacetimeEvent& x, const SpacetimeEvent& xp,
                              const SpacetimeParams& p, double eps,
                              const ImageSumControl& ctl = {});

// Smallest n with C exp(-pi sqrt(M) n) < target_tol, where C is fixed by the
// n = 1 image term of the kernel. Throws DomainError past kMaxImageIndex.
int truncation_bound(double mass, double ads_length, double target_tol);

}  // namespace geonharvest
