#pragma once

#include <complex>
#include <functional>
#include <type_traits>

namespace geonharvest {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_levels = 12;

  void validate() const;
  // Distance beyond which exp(-rate * y^2) < abs_tol, doubled as a guard.
  double tail_cutoff(double gaussian_rate) const;
};

struct QuadResult {
  double value = 0.0;
  // |I_k - I_{k-1}| between the last two refinement levels.
  double err_estimate = 0.0;
  int evaluations = 0;
  int levels = 0;
};

struct ComplexQuadResult {
  std::complex<double> value;
  double err_estimate = 0.0;
  int evaluations = 0;
};

// Integrand seen by the tanh-sinh engine: (x, x - a, b - x). The two distances
// are computed without cancellation, so integrands singular at an endpoint
// can be written in terms of them.
using EndpointIntegrand = std::function<double(double, double, double)>;

// Tanh-sinh rule with level doubling on [a, b]. Tolerates integrable
// endpoint singularities (e.g. |x - a|^{-1/2}). Throws NumericalError with
// the best estimate if max_levels is exhausted.
QuadResult tanh_sinh(const EndpointIntegrand& f, double a, double b,
                     const QuadratureSpec& spec);

template <class F>
QuadResult integrate_finite(F&& f, double a, double b,
                            const QuadratureSpec& spec = {}) {
  if constexpr (std::is_invocable_r_v<double, F&, double, double, double>) {
    return tanh_sinh(EndpointIntegrand(std::forward<F>(f)), a, b, spec);
  } else {
    return tanh_sinh(
        [&f](double x, double, double) { return static_cast<double>(f(x)); },
        a, b, spec);
  }
}

// Integral over [a, inf) of an integrand bounded by C * exp(-rate (y - center)^2).
// Truncated at spec.tail_cutoff(rate) past max(a, center).
template <class F>
QuadResult integrate_semi_infinite(F&& f, double a, double gaussian_rate,
                                   const QuadratureSpec& spec = {},
                                   double center = 0.0) {
  const double start = a > center ? a : center;
  const double upper = start + spec.tail_cutoff(gaussian_rate);
  return integrate_finite(std::forward<F>(f), a, upper, spec);
}

// Re int_0^inf exp(-a y^2) exp(-i beta y) (cosh alpha - cosh y)^{-1/2} dy with
// the principal square root. Split at y = alpha: cos-kernel on [0, alpha],
// -sin-kernel against (cosh y - cosh alpha)^{-1/2} on (alpha, inf).
QuadResult integrate_branchcut(double alpha, double damping, double freq,
                               const QuadratureSpec& spec = {});

// int_0^inf exp(-a y^2) cos(beta y) (cosh alpha - cosh y)^{-1/2} dy with the
// principal square root: real part from [0, alpha], imaginary part
// -int_alpha^inf exp(-a y^2) cos(beta y) (cosh y - cosh alpha)^{-1/2} dy.
ComplexQuadResult integrate_branchcut_cos(double alpha, double damping,
                                          double freq,
                                          const QuadratureSpec& spec = {});

// int_0^inf exp(-a y^2) cos(beta y) (z + cosh y)^{-1/2} dy, z > -1.
QuadResult integrate_shifted_cosh(double z, double damping, double freq,
                                  const QuadratureSpec& spec = {});

// int_{-inf}^{inf} exp(-(gap - y)^2) / (exp(y / temperature) + 1) dy.
QuadResult integrate_thermal(double gap, double temperature,
                             const QuadratureSpec& spec = {});

}  // namespace geonharvest
