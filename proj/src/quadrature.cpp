#include "geonharvest/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "geonharvest/error.hpp"

namespace geonharvest {

namespace {

// Nodes beyond |t| = 4 sit within ~1e-38 (relative) of the endpoints.
constexpr double kMaxAbscissa = 4.0;
constexpr int kMinLevels = 3;

double log_inverse(double tol) { return std::log(1.0 / tol); }

// cosh(p) - cosh(q) for p > q >= 0, written through the difference p - q so
// that it stays accurate as q -> p.
double cosh_gap(double sum_half, double diff_half) {
  return 2.0 * std::sinh(sum_half) * std::sinh(diff_half);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw DomainError("quadrature tolerances must be positive");
  if (max_levels < kMinLevels)
    throw DomainError("quadrature max_levels must be at least 3");
}

double QuadratureSpec::tail_cutoff(double gaussian_rate) const {
  if (!(gaussian_rate > 0.0))
    throw DomainError("Gaussian decay rate must be positive");
  return 2.0 * std::sqrt(log_inverse(abs_tol) / gaussian_rate);
}

QuadResult tanh_sinh(const EndpointIntegrand& f, double a, double b,
                     const QuadratureSpec& spec) {
  spec.validate();
  if (!(b > a)) {
    if (a == b) return {};
    throw DomainError("tanh_sinh: requires a < b");
  }
  const double length = b - a;
  constexpr double half_pi = std::numbers::pi / 2.0;

  QuadResult out;
  double weighted_sum = 0.0;

  auto add_pair = [&](double t) {
    // t > 0 contributes the node near b and its mirror near a.
    const double u = half_pi * std::sinh(t);
    const double e = std::exp(-2.0 * u);
    const double near_end = length * e / (1.0 + e);
    const double far_end = length / (1.0 + e);
    const double w = length * std::numbers::pi * std::cosh(t) * e /
                     ((1.0 + e) * (1.0 + e));
    if (near_end <= 0.0 || w <= 0.0) return;
    const double fr = f(b - near_end, far_end, near_end);
    const double fl = f(a + near_end, near_end, far_end);
    out.evaluations += 2;
    if (!std::isfinite(fr) || !std::isfinite(fl))
      throw NumericalError("tanh_sinh: integrand is not finite near an endpoint");
    weighted_sum += w * (fr + fl);
  };

  // Level 0: h = 1.
  {
    const double mid = f(a + 0.5 * length, 0.5 * length, 0.5 * length);
    ++out.evaluations;
    if (!std::isfinite(mid))
      throw NumericalError("tanh_sinh: integrand is not finite at the midpoint");
    weighted_sum = length * std::numbers::pi / 4.0 * mid;
    for (double t = 1.0; t <= kMaxAbscissa; t += 1.0) add_pair(t);
  }
  double h = 1.0;
  double previous = h * weighted_sum;

  for (int level = 1; level <= spec.max_levels; ++level) {
    h *= 0.5;
    for (double t = h; t <= kMaxAbscissa; t += 2.0 * h) add_pair(t);
    const double current = h * weighted_sum;
    const double diff = std::abs(current - previous);
    out.value = current;
    out.err_estimate = diff;
    out.levels = level;
    if (level >= kMinLevels &&
        diff <= std::max(spec.abs_tol, spec.rel_tol * std::abs(current))) {
      return out;
    }
    previous = current;
  }
  throw NumericalError("tanh_sinh: no convergence after " +
                           std::to_string(spec.max_levels) + " levels",
                       out.value, out.err_estimate);
}

namespace {

struct BranchPieces {
  QuadResult inner;
  QuadResult outer;
};

// Both halves of int_0^inf exp(-a y^2) k(y) |cosh alpha - cosh y|^{-1/2} dy,
// split at y = alpha.
template <class InnerKernel, class OuterKernel>
BranchPieces branch_pieces(double alpha, double damping, InnerKernel inner_k,
                           OuterKernel outer_k, const QuadratureSpec& spec) {
  if (!(alpha > 0.0))
    throw DomainError("branch-cut integral requires alpha > 0");
  if (!(damping > 0.0))
    throw DomainError("branch-cut integral requires positive damping");
  const double cutoff = spec.tail_cutoff(damping);
  BranchPieces out;

  if (alpha <= cutoff) {
    // Singular at y = alpha, i.e. at the right endpoint (distance s = alpha - y).
    out.inner = integrate_finite(
        [&](double y, double, double s) {
          return std::exp(-damping * y * y) * inner_k(y) /
                 std::sqrt(cosh_gap(alpha - 0.5 * s, 0.5 * s));
        },
        0.0, alpha, spec);
    // Past the branch point the integrand also decays like exp(-y / 2).
    const double upper =
        std::min(cutoff, alpha + 2.0 * log_inverse(spec.abs_tol) + 2.0);
    out.outer = integrate_finite(
        [&](double s) {
          const double y = alpha + s;
          return std::exp(-damping * y * y) * outer_k(y) /
                 std::sqrt(cosh_gap(alpha + 0.5 * s, 0.5 * s));
        },
        0.0, upper - alpha, spec);
  } else {
    // The Gaussian has died out well before the branch point.
    out.inner = integrate_finite(
        [&](double y) {
          const double s = alpha - y;
          return std::exp(-damping * y * y) * inner_k(y) /
                 std::sqrt(cosh_gap(alpha - 0.5 * s, 0.5 * s));
        },
        0.0, cutoff, spec);
  }
  return out;
}

}  // namespace

QuadResult integrate_branchcut(double alpha, double damping, double freq,
                               const QuadratureSpec& spec) {
  auto pieces = branch_pieces(
      alpha, damping, [freq](double y) { return std::cos(freq * y); },
      [freq](double y) { return std::sin(freq * y); }, spec);
  QuadResult out;
  out.value = pieces.inner.value - pieces.outer.value;
  out.err_estimate = pieces.inner.err_estimate + pieces.outer.err_estimate;
  out.evaluations = pieces.inner.evaluations + pieces.outer.evaluations;
  out.levels = std::max(pieces.inner.levels, pieces.outer.levels);
  return out;
}

ComplexQuadResult integrate_branchcut_cos(double alpha, double damping,
                                          double freq,
                                          const QuadratureSpec& spec) {
  auto kernel = [freq](double y) { return std::cos(freq * y); };
  auto pieces = branch_pieces(alpha, damping, kernel, kernel, spec);
  ComplexQuadResult out;
  out.value = {pieces.inner.value, -pieces.outer.value};
  out.err_estimate = pieces.inner.err_estimate + pieces.outer.err_estimate;
  out.evaluations = pieces.inner.evaluations + pieces.outer.evaluations;
  return out;
}

QuadResult integrate_shifted_cosh(double z, double damping, double freq,
                                  const QuadratureSpec& spec) {
  if (!(z > -1.0)) throw DomainError("integrate_shifted_cosh: requires z > -1");
  if (!(damping > 0.0))
    throw DomainError("integrate_shifted_cosh: requires positive damping");
  // (z + cosh y)^{-1/2} <= sqrt(2) e^{-y/2}; stop once that is negligible
  // relative to the value at y = 0.
  const double decay =
      std::log(4.0 * (z + 1.0)) + 2.0 * log_inverse(spec.abs_tol);
  const double upper = std::min(spec.tail_cutoff(damping), decay);
  return integrate_finite(
      [&](double y) {
        return std::exp(-damping * y * y) * std::cos(freq * y) /
               std::sqrt(z + std::cosh(y));
      },
      0.0, upper, spec);
}

QuadResult integrate_thermal(double gap, double temperature,
                             const QuadratureSpec& spec) {
  if (!(temperature > 0.0))
    throw DomainError("integrate_thermal: temperature must be positive");
  // Split at the Fermi step y = 0; each side is written on [0, inf).
  auto above = integrate_semi_infinite(
      [&](double y) {
        const double e = std::exp(-y / temperature);
        const double d = gap - y;
        return std::exp(-d * d) * e / (1.0 + e);
      },
      0.0, 1.0, spec, gap);
  auto below = integrate_semi_infinite(
      [&](double y) {
        const double e = std::exp(-y / temperature);
        const double d = gap + y;
        return std::exp(-d * d) / (1.0 + e);
      },
      0.0, 1.0, spec, -gap);
  QuadResult out;
  out.value = above.value + below.value;
  out.err_estimate = above.err_estimate + below.err_estimate;
  out.evaluations = above.evaluations + below.evaluations;
  out.levels = std::max(above.levels, below.levels);
  return out;
}

}  // namespace geonharvest
