#include "geonharvest/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "geonharvest/error.hpp"

namespace geonharvest {

namespace {

using cplx = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// acosh(R / r_h) without cancellation near the horizon.
double rapidity(double radius, double rh) {
  const double excess = radius - rh;
  return std::log1p((excess + std::sqrt(excess * (radius + rh))) / rh);
}

// acosh(1 + c1) for c1 >= 0, accurate as c1 -> 0.
double acosh1p(double c1) { return 2.0 * std::asinh(std::sqrt(0.5 * c1)); }

double sinh_half_sq(double x) {
  const double s = std::sinh(0.5 * x);
  return s * s;
}

void bump(int* counter, int by) {
  if (counter) *counter += by;
}

void add_err(double* err, double by) {
  if (err) *err += by;
}

template <class T>
struct SumResult {
  T sum{};
  double tail = 0.0;
  int last = 0;
};

// Sums term(n) for n = first, first + 1, ... until two consecutive terms fall
// below the relative tolerance measured against |base + partial sum|.
template <class T, class Term>
SumResult<T> image_sum(Term&& term, int first, T base,
                       const ObservableSpec& spec, const char* what) {
  SumResult<T> out;
  double prev_mag = -1.0;
  int quiet = 0;
  for (int n = first; n <= spec.max_images; ++n) {
    const T t = term(n);
    out.sum += t;
    out.last = n;
    const double mag = std::abs(t);
    const double scale = std::abs(base + out.sum);
    const double tol = std::max(spec.image_abs_tol, spec.image_rel_tol * scale);
    quiet = mag <= tol ? quiet + 1 : 0;
    if (quiet >= 2) {
      // Geometric estimate of the neglected tail.
      if (prev_mag > 0.0 && mag < prev_mag) {
        const double r = mag / prev_mag;
        out.tail = mag * r / (1.0 - r);
      } else {
        out.tail = mag;
      }
      return out;
    }
    prev_mag = mag;
  }
  throw NumericalError(std::string(what) + ": image sum not converged after " +
                           std::to_string(spec.max_images) + " terms",
                       std::abs(base + out.sum), prev_mag);
}

}  // namespace

// ---------------------------------------------------------------------------
// Parameter blocks

double redshift_ratio(double gamma_a, double gamma_b) {
  if (!(gamma_a > 0.0) || !(gamma_b > 0.0))
    throw DomainError("redshift factors must be positive");
  // Scale out the larger one so the squares cannot overflow.
  const double big = std::max(gamma_a, gamma_b);
  const double u = gamma_a / big, v = gamma_b / big;
  return u * v / (u * u + v * v);
}

PTermParams::PTermParams(const DetectorConfig& d, const SpacetimeParams& p) {
  validate(d, p);
  const double rh = p.horizon();
  const double l = p.ads_length;
  rapidity_ = rapidity(d.radius, rh);
  root_mass_ = std::sqrt(p.mass);
  const double sh = std::sinh(rapidity_);
  redshift_ = root_mass_ * sh;
  gap_ = d.gap;
  // r_h / (2 pi l sqrt(R^2 - r_h^2)) = 1 / (2 pi l sinh D)
  temperature_ = 1.0 / (kTwoPi * l * sh);
  // gamma^2 l^4 / (4 r_h^2)
  damping_ = 0.25 * l * l * sh * sh;
  // gamma Omega l^2 / r_h
  freq_ = d.gap * l * sh;
}

double PTermParams::alpha(int n, int sign) const {
  const double ch = std::cosh(rapidity_);
  const double sh = std::sinh(rapidity_);
  const double x = kTwoPi * n * root_mass_;
  // cosh(alpha) - 1 written without cancellation.
  double c1;
  if (sign < 0) {
    if (n == 0) return 0.0;
    c1 = 2.0 * ch * ch * sinh_half_sq(x) / (sh * sh);
  } else {
    c1 = (2.0 * ch * ch * sinh_half_sq(x) + 2.0) / (sh * sh);
  }
  return acosh1p(c1);
}

double PTermParams::z(int n, int sign) const {
  const double ch = std::cosh(rapidity_);
  const double sh = std::sinh(rapidity_);
  const double x = kTwoPi * (n + 0.5) * root_mass_;
  return (ch * ch * std::cosh(x) + (sign < 0 ? -1.0 : 1.0)) / (sh * sh);
}

XTermParams::XTermParams(const DetectorPair& pair, const SpacetimeParams& p) {
  // Symmetric in A <-> B, so either labelling is accepted here.
  if (pair.a.radius > pair.b.radius)
    validate(DetectorPair{pair.b, pair.a}, p);
  else
    validate(pair, p);
  const double rh = p.horizon();
  const double l = p.ads_length;
  rapidity_a_ = rapidity(pair.a.radius, rh);
  rapidity_b_ = rapidity(pair.b.radius, rh);
  root_mass_ = std::sqrt(p.mass);
  gap_ = pair.a.gap;
  const double sa = std::sinh(rapidity_a_);
  const double sb = std::sinh(rapidity_b_);
  const double norm = sa * sa + sb * sb;
  ratio_ = sa * sb / norm;
  if (!(ratio_ <= 0.5))
    throw NumericalError("redshift ratio exceeds 1/2; inconsistent detector pair");
  // (1 / 2) gamma_A^2 gamma_B^2 / (gamma_A^2 + gamma_B^2) * l^4 / r_h^2
  damping_ = 0.5 * l * l * sa * sa * sb * sb / norm;
  // Omega gamma_A gamma_B (gamma_A +- gamma_B) / (gamma_A^2 + gamma_B^2) * l^2 / r_h
  freq_minus_ = gap_ * l * sa * sb * (sa - sb) / norm;
  freq_plus_ = gap_ * l * sa * sb * (sa + sb) / norm;
}

double XTermParams::alpha(int n, int sign) const {
  const double ca = std::cosh(rapidity_a_), cb = std::cosh(rapidity_b_);
  const double sa = std::sinh(rapidity_a_), sb = std::sinh(rapidity_b_);
  const double x = kTwoPi * n * root_mass_;
  const double dd = rapidity_b_ - rapidity_a_;
  double c1;
  if (sign < 0) {
    c1 = (2.0 * ca * cb * sinh_half_sq(x) + 2.0 * sinh_half_sq(dd)) / (sa * sb);
  } else {
    c1 = (2.0 * ca * cb * sinh_half_sq(x) + std::cosh(dd) + 1.0) / (sa * sb);
  }
  return acosh1p(c1);
}

double XTermParams::z(int n, int sign) const {
  const double ca = std::cosh(rapidity_a_), cb = std::cosh(rapidity_b_);
  const double sa = std::sinh(rapidity_a_), sb = std::sinh(rapidity_b_);
  const double x = kTwoPi * (n + 0.5) * root_mass_;
  return (ca * cb * std::cosh(x) + (sign < 0 ? -1.0 : 1.0)) / (sa * sb);
}

// ---------------------------------------------------------------------------
// Image brackets

double p_btz_image_term(const PTermParams& t, int n, int zeta,
                        const QuadratureSpec& q, int* integrals, double* err) {
  double out = 0.0;
  if (n > 0) {
    const auto minus = integrate_branchcut(t.alpha(n, -1), t.damping(), t.freq(), q);
    out += minus.value;
    add_err(err, minus.err_estimate);
    bump(integrals, 1);
  }
  if (zeta != 0) {
    const auto plus = integrate_branchcut(t.alpha(n, +1), t.damping(), t.freq(), q);
    // The n = 0 Dirichlet/Neumann term enters with half weight.
    out -= (n == 0 ? 0.5 : 1.0) * zeta * plus.value;
    add_err(err, std::abs(zeta) * plus.err_estimate);
    bump(integrals, 1);
  }
  return out;
}

double delta_p_image_term(const PTermParams& t, int n, int zeta,
                          const QuadratureSpec& q, int* integrals, double* err) {
  const auto minus = integrate_shifted_cosh(t.z(n, -1), t.damping(), 0.0, q);
  double out = minus.value;
  add_err(err, minus.err_estimate);
  bump(integrals, 1);
  if (zeta != 0) {
    const auto plus = integrate_shifted_cosh(t.z(n, +1), t.damping(), 0.0, q);
    out -= zeta * plus.value;
    add_err(err, std::abs(zeta) * plus.err_estimate);
    bump(integrals, 1);
  }
  return out;
}

cplx x_btz_image_term(const XTermParams& t, int n, int zeta,
                      const QuadratureSpec& q, int* integrals, double* err) {
  const auto minus =
      integrate_branchcut_cos(t.alpha(n, -1), t.damping(), t.freq(-1), q);
  cplx out = minus.value;
  add_err(err, minus.err_estimate);
  bump(integrals, 1);
  if (zeta != 0) {
    const auto plus =
        integrate_branchcut_cos(t.alpha(n, +1), t.damping(), t.freq(-1), q);
    out -= static_cast<double>(zeta) * plus.value;
    add_err(err, std::abs(zeta) * plus.err_estimate);
    bump(integrals, 1);
  }
  return out;
}

double delta_x_image_term(const XTermParams& t, int n, int zeta,
                          const QuadratureSpec& q, int* integrals, double* err) {
  const auto minus = integrate_shifted_cosh(t.z(n, -1), t.damping(), t.freq(+1), q);
  double out = minus.value;
  add_err(err, minus.err_estimate);
  bump(integrals, 1);
  if (zeta != 0) {
    const auto plus = integrate_shifted_cosh(t.z(n, +1), t.damping(), t.freq(+1), q);
    out -= zeta * plus.value;
    add_err(err, std::abs(zeta) * plus.err_estimate);
    bump(integrals, 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Observables

Evaluation p_btz(const DetectorConfig& d, const SpacetimeParams& p,
                 const ObservableSpec& spec) {
  const PTermParams t(d, p);
  const double pref = 1.0 / std::sqrt(kTwoPi);
  Evaluation out;

  // n = 0: thermal (Fermi-factor) term, sqrt(pi / 2) / sqrt(2 pi) = 1 / 2.
  const auto thermal = integrate_thermal(t.gap(), t.temperature(), spec.quad);
  out.integrals = 1;
  out.err = 0.5 * thermal.err_estimate;
  double err = 0.0;
  const double head =
      0.5 * thermal.value +
      pref * p_btz_image_term(t, 0, p.zeta, spec.quad, &out.integrals, &err);

  // Terms n and -n coincide; the printed n >= 1 sum already carries both.
  auto sum = image_sum(
      [&](int n) {
        return pref * p_btz_image_term(t, n, p.zeta, spec.quad, &out.integrals, &err);
      },
      1, head, spec, "p_btz");
  out.value = head + sum.sum;
  out.err += pref * err + sum.tail;
  out.images = sum.last;
  return out;
}

Evaluation delta_p(const DetectorConfig& d, const SpacetimeParams& p,
                   const ObservableSpec& spec) {
  const PTermParams t(d, p);
  // (1 / (4 sqrt(2 pi))) e^{-Omega^2} sum_{n in Z} int_R ...; images n and
  // -1 - n coincide and each integrand is even in y.
  const double pref = std::exp(-t.gap() * t.gap()) / std::sqrt(kTwoPi);
  Evaluation out;
  double err = 0.0;
  auto sum = image_sum(
      [&](int n) {
        return pref * delta_p_image_term(t, n, p.zeta, spec.quad, &out.integrals, &err);
      },
      0, 0.0, spec, "delta_p");
  out.value = sum.sum;
  out.err = pref * err + sum.tail;
  out.images = sum.last;
  return out;
}

Evaluation p_total(const DetectorConfig& d, const SpacetimeParams& p,
                   const ObservableSpec& spec) {
  Evaluation out = p_btz(d, p, spec);
  if (p.family == Family::Geon) {
    const Evaluation geon = delta_p(d, p, spec);
    out.value += geon.value;
    out.err += geon.err;
    out.images = std::max(out.images, geon.images);
    out.integrals += geon.integrals;
  }
  return out;
}

ComplexEvaluation x_btz(const DetectorPair& pair, const SpacetimeParams& p,
                        const ObservableSpec& spec) {
  const XTermParams t(pair, p);
  const double ratio = t.redshift_ratio();
  const double w = t.gap();
  const double pref = -std::sqrt(ratio) / (2.0 * std::sqrt(std::numbers::pi)) *
                      std::exp(-w * w * (0.5 + ratio));
  ComplexEvaluation out;
  double err = 0.0;
  const cplx head = pref * x_btz_image_term(t, 0, p.zeta, spec.quad, &out.integrals, &err);
  auto sum = image_sum(
      [&](int n) {
        return 2.0 * pref *
               x_btz_image_term(t, n, p.zeta, spec.quad, &out.integrals, &err);
      },
      1, head, spec, "x_btz");
  out.value = head + sum.sum;
  out.err = std::abs(pref) * 2.0 * err + sum.tail;
  out.images = sum.last;
  return out;
}

Evaluation delta_x(const DetectorPair& pair, const SpacetimeParams& p,
                   const ObservableSpec& spec) {
  const XTermParams t(pair, p);
  const double ratio = t.redshift_ratio();
  const double w = t.gap();
  // Images n and -1 - n coincide.
  const double pref = -std::sqrt(ratio) / std::sqrt(std::numbers::pi) *
                      std::exp(-w * w * (0.5 - ratio));
  Evaluation out;
  double err = 0.0;
  auto sum = image_sum(
      [&](int n) {
        return pref * delta_x_image_term(t, n, p.zeta, spec.quad, &out.integrals, &err);
      },
      0, 0.0, spec, "delta_x");
  out.value = sum.sum;
  out.err = std::abs(pref) * err + sum.tail;
  out.images = sum.last;
  return out;
}

ComplexEvaluation x_total(const DetectorPair& pair, const SpacetimeParams& p,
                          const ObservableSpec& spec) {
  ComplexEvaluation out = x_btz(pair, p, spec);
  if (p.family == Family::Geon) {
    const Evaluation geon = delta_x(pair, p, spec);
    out.value += geon.value;
    out.err += geon.err;
    out.images = std::max(out.images, geon.images);
    out.integrals += geon.integrals;
  }
  return out;
}

double concurrence(double p_a, double p_b, double x_abs, double tol) {
  if (p_a < -tol || p_b < -tol)
    throw NumericalError("negative transition probability (" +
                         std::to_string(std::min(p_a, p_b)) +
                         "); upstream quadrature failure");
  if (x_abs < 0.0) throw DomainError("|X| must be nonnegative");
  const double noise = std::sqrt(std::max(p_a, 0.0) * std::max(p_b, 0.0));
  return 2.0 * std::max(0.0, x_abs - noise);
}

HarvestResult harvest(const DetectorPair& pair, const SpacetimeParams& p,
                      const ObservableSpec& spec) {
  validate(pair, p);
  const Evaluation pa = p_total(pair.a, p, spec);
  const Evaluation pb = p_total(pair.b, p, spec);
  const ComplexEvaluation x = x_total(pair, p, spec);

  HarvestResult r;
  r.p_a = pa.value;
  r.p_b = pb.value;
  r.x = x.value;
  r.x_abs = std::abs(x.value);
  r.concurrence = concurrence(r.p_a, r.p_b, r.x_abs, 1e3 * spec.quad.abs_tol + 1e-12);
  r.err.p_a = pa.err;
  r.err.p_b = pb.err;
  r.err.x = x.err;
  // First-order propagation through 2(|X| - sqrt(P_A P_B)).
  if (r.concurrence > 0.0) {
    const double root = std::sqrt(std::max(r.p_a * r.p_b, 1e-300));
    r.err.concurrence =
        2.0 * (x.err + 0.5 * (r.p_b * pa.err + r.p_a * pb.err) / root);
  }
  r.images = std::max({pa.images, pb.images, x.images});
  return r;
}

}  // namespace geonharvest
