#include "geonharvest/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "geonharvest/error.hpp"
#include "geonharvest/wightman.hpp"

namespace geonharvest {

namespace {

using cplx = std::complex<double>;
constexpr int kOrder = 20;

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  // Appends kOrder-point Gauss-Legendre on [a, b].
  void add_panel(double a, double b) {
    using GL = boost::math::quadrature::gauss<double, kOrder>;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const auto& x = GL::abscissa();
    const auto& w = GL::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      nodes.push_back(mid - half * x[i]);
      weights.push_back(half * w[i]);
      nodes.push_back(mid + half * x[i]);
      weights.push_back(half * w[i]);
    }
  }
};

enum class Kernel { Direct, TimeOrdered };

struct Problem {
  double radius_a;
  double radius_b;
  double gamma_a;
  double gamma_b;
  double gap;
  // Phase e^{-i gap (tau_A + sign_b tau_B)}.
  double sign_b;
  Kernel kernel;
};

// Coordinate-time offsets t_A - t_B at which sigma_n or sigma_n + 2 vanishes
// (eps = 0): light-cone images, where the regulated kernel is sharply peaked.
std::vector<double> light_cone_points(const Problem& pb, const SpacetimeParams& p,
                                      int n_max, double limit) {
  const double rh = p.horizon();
  const double l = p.ads_length;
  const double la = std::sqrt((pb.radius_a - rh) * (pb.radius_a + rh));
  const double lb = std::sqrt((pb.radius_b - rh) * (pb.radius_b + rh));
  const double to_time = l * l / rh;
  std::vector<double> out{0.0};
  for (int n = 0; n <= n_max; ++n) {
    const double ang = pb.radius_a * pb.radius_b *
                       std::cosh(2.0 * std::numbers::pi * n * rh / l);
    for (double shift : {-rh * rh, rh * rh}) {
      if (shift > 0.0 && p.zeta == 0) continue;
      const double c = (ang + shift) / (la * lb);
      if (!(c >= 1.0)) continue;
      const double y = std::acosh(c) * to_time;
      if (y > limit) continue;
      out.push_back(y);
      out.push_back(-y);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-14 * (1.0 + std::abs(a)); }),
            out.end());
  return out;
}

// Composite rule on [lo, hi], graded geometrically toward every interior
// point in `marks` (smallest cell `finest`, ratio 2, capped at `coarsest`).
Rule graded_rule(double lo, double hi, std::vector<double> marks, double finest,
                 double coarsest) {
  marks.erase(std::remove_if(marks.begin(), marks.end(),
                             [&](double m) { return m <= lo || m >= hi; }),
              marks.end());
  std::vector<double> knots{lo};
  knots.insert(knots.end(), marks.begin(), marks.end());
  knots.push_back(hi);

  Rule rule;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k], b = knots[k + 1];
    const bool grade_left = k > 0;
    const bool grade_right = k + 2 < knots.size();
    const double mid = 0.5 * (a + b);
    std::vector<double> cuts{a};
    // Outward from the left mark.
    if (grade_left) {
      for (double step = finest; a + step < (grade_right ? mid : b) && step < coarsest; step *= 2.0)
        cuts.push_back(a + step);
    }
    std::vector<double> right_cuts;
    if (grade_right) {
      for (double step = finest; b - step > (grade_left ? mid : a) && step < coarsest; step *= 2.0)
        right_cuts.push_back(b - step);
    }
    // Uniform cells (<= coarsest) across the middle stretch.
    const double from = cuts.back();
    const double to = right_cuts.empty() ? b : right_cuts.back();
    if (to > from) {
      const int cells = std::max(1, static_cast<int>(std::ceil((to - from) / coarsest)));
      for (int i = 1; i < cells; ++i) cuts.push_back(from + (to - from) * i / cells);
    }
    for (auto it = right_cuts.rbegin(); it != right_cuts.rend(); ++it) cuts.push_back(*it);
    cuts.push_back(b);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1] > cuts[i]) rule.add_panel(cuts[i], cuts[i + 1]);
  }
  return rule;
}

std::vector<cplx> evaluate(const Problem& pb, const SpacetimeParams& p,
                           const OracleSpec& spec, int& grid_points) {
  spec.validate();
  const double rh = p.horizon();
  const double l = p.ads_length;
  const int n_max = truncation_bound(p.mass, l, spec.image_tol);

  // Box |tau_A|, |tau_B| <= tau_max in coordinate time, as a rectangle in
  // (diff, sum) = (t_A - t_B, t_A + t_B).
  const double half_width = spec.tau_max * (1.0 / pb.gamma_a + 1.0 / pb.gamma_b);
  const double gamma_max = std::max(pb.gamma_a, pb.gamma_b);
  const double to_time = l * l / rh;
  double coarsest = std::min({0.5 / gamma_max, 0.25 * to_time, half_width / 16.0});
  if (pb.gap > 0.0) coarsest = std::min(coarsest, 1.0 / (pb.gap * gamma_max));

  ImageSumControl ctl;
  ctl.automatic = false;
  ctl.n_max = n_max;
  SpacetimeParams btz = p;
  btz.family = Family::BTZ;

  // Outer (sum) rule and geon images, shared by every regulator.
  Rule sum_rule;
  for (int i = 0; i < spec.sum_panels; ++i) {
    const double a = -half_width + 2.0 * half_width * i / spec.sum_panels;
    const double b = -half_width + 2.0 * half_width * (i + 1) / spec.sum_panels;
    sum_rule.add_panel(a, b);
  }
  std::vector<double> geon_part(sum_rule.nodes.size(), 0.0);
  if (p.family == Family::Geon) {
    const double pref = wightman_prefactor(p);
    for (std::size_t j = 0; j < sum_rule.nodes.size(); ++j) {
      const double s = sum_rule.nodes[j];
      const SpacetimeEvent xa{0.5 * s, pb.radius_a, 0.0};
      const SpacetimeEvent xb{0.5 * s, pb.radius_b, 0.0};
      double acc = 0.0;
      for (int n = n_max - 1; n >= 0; --n)
        acc += geon_image_term(xa, xb, n, p) + geon_image_term(xa, xb, -1 - n, p);
      geon_part[j] = pref * acc;
    }
  }

  const auto marks = light_cone_points(pb, p, n_max, half_width);
  std::vector<cplx> out;
  grid_points = 0;
  for (double eps : spec.epsilons) {
    const Rule diff_rule =
        graded_rule(-half_width, half_width, marks, 0.05 * eps * to_time, coarsest);

    std::vector<cplx> btz_part(diff_rule.nodes.size());
    for (std::size_t i = 0; i < diff_rule.nodes.size(); ++i) {
      const double d = diff_rule.nodes[i];
      const SpacetimeEvent xa{0.5 * d, pb.radius_a, 0.0};
      const SpacetimeEvent xb{-0.5 * d, pb.radius_b, 0.0};
      if (pb.kernel == Kernel::TimeOrdered && d > 0.0) {
        // t_A > t_B: theta(t - t') W(x_B, x_A).
        btz_part[i] = wightman(xb, xa, btz, eps, ctl);
      } else {
        btz_part[i] = wightman(xa, xb, btz, eps, ctl);
      }
    }

    cplx total = 0.0;
    for (std::size_t i = 0; i < diff_rule.nodes.size(); ++i) {
      const double d = diff_rule.nodes[i];
      cplx row = 0.0;
      for (std::size_t j = 0; j < sum_rule.nodes.size(); ++j) {
        const double s = sum_rule.nodes[j];
        const double tau_a = pb.gamma_a * 0.5 * (s + d);
        const double tau_b = pb.gamma_b * 0.5 * (s - d);
        const cplx expo(-0.5 * (tau_a * tau_a + tau_b * tau_b),
                        -pb.gap * (tau_a + pb.sign_b * tau_b));
        row += sum_rule.weights[j] * std::exp(expo) * (btz_part[i] + geon_part[j]);
      }
      total += diff_rule.weights[i] * row;
    }
    // d tau_A d tau_B = gamma_A gamma_B dt_A dt_B = gamma_A gamma_B / 2 d(diff) d(sum)
    out.push_back(0.5 * pb.gamma_a * pb.gamma_b * total);
    grid_points += static_cast<int>(diff_rule.nodes.size() * sum_rule.nodes.size());
  }
  return out;
}

OracleResult extrapolate(std::vector<cplx> estimates, const OracleSpec& spec,
                         int grid_points) {
  const auto& eps = spec.epsilons;
  const std::size_t k = estimates.size();
  OracleResult r;
  r.grid_points = grid_points;
  if (k == 1) {
    r.value = estimates[0];
  } else {
    for (std::size_t i = 2; i < k; ++i) {
      const double prev = std::abs(estimates[i - 1] - estimates[i - 2]);
      const double cur = std::abs(estimates[i] - estimates[i - 1]);
      if (cur > prev && cur > 1e-12 * std::abs(estimates[i]))
        throw NumericalError("oracle: eps-sequence is not converging",
                             std::abs(estimates[i]), cur);
    }
    const double e1 = eps[k - 2], e2 = eps[k - 1];
    r.value = (e1 * estimates[k - 1] - e2 * estimates[k - 2]) / (e1 - e2);
  }
  r.estimates = std::move(estimates);
  return r;
}

Problem make_problem(const DetectorConfig& a, const DetectorConfig& b,
                     const SpacetimeParams& p, double sign_b, Kernel kernel) {
  validate(a, p);
  validate(b, p);
  if (a.gap != b.gap) throw DomainError("oracle: detectors must share the gap");
  if (a.angle != b.angle) throw DomainError("oracle: detectors must share the angle");
  return Problem{a.radius, b.radius, redshift(a.radius, p), redshift(b.radius, p),
                 a.gap, sign_b, kernel};
}

}  // namespace

void OracleSpec::validate() const {
  if (epsilons.empty()) throw DomainError("oracle: need at least one regulator");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw DomainError("oracle: regulators must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw DomainError("oracle: regulators must be strictly decreasing");
  }
  if (!(tau_max >= 5.0)) throw DomainError("oracle: tau_max must be at least 5");
  if (sum_panels < 1) throw DomainError("oracle: need at least one panel");
}

OracleResult p_direct(const DetectorConfig& d, const SpacetimeParams& p,
                      const OracleSpec& spec) {
  const Problem pb = make_problem(d, d, p, -1.0, Kernel::Direct);
  int points = 0;
  auto est = evaluate(pb, p, spec, points);
  return extrapolate(std::move(est), spec, points);
}

OracleResult x_direct(const DetectorPair& pair, const SpacetimeParams& p,
                      const OracleSpec& spec) {
  const Problem pb = make_problem(pair.a, pair.b, p, 1.0, Kernel::TimeOrdered);
  int points = 0;
  auto est = evaluate(pb, p, spec, points);
  return extrapolate(std::move(est), spec, points);
}

OracleResult c_direct(const DetectorPair& pair, const SpacetimeParams& p,
                      const OracleSpec& spec) {
  const Problem pb = make_problem(pair.a, pair.b, p, -1.0, Kernel::Direct);
  int points = 0;
  auto est = evaluate(pb, p, spec, points);
  return extrapolate(std::move(est), spec, points);
}

}  // namespace geonharvest
