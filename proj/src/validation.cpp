#include "geonharvest/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>

#include "geonharvest/error.hpp"
#include "geonharvest/observables.hpp"
#include "geonharvest/quadrature.hpp"

namespace geonharvest {

namespace {

std::string describe(double mass, Family f, double gap) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "M=%g %s gap=%g", mass, std::string(to_string(f)).c_str(), gap);
  return buf;
}

double rel_dev(double a, double b) { return std::abs(a - b) / std::abs(b); }

Check finish(std::string name, double worst, double threshold, std::string detail) {
  return Check{std::move(name), worst <= threshold, worst, threshold, std::move(detail)};
}

Check check_concurrence_forms() {
  // Harvested states from the closed form, plus random states of the same
  // shape with the total-correlation element below saturation.
  struct Sample {
    double pa, pb;
    std::complex<double> x, c;
  };
  std::vector<Sample> samples;
  for (double m : {1.0, 0.01})
    for (double gap : {0.01, 1.0})
      for (double d : {0.2, 1.0, 3.0}) {
        const SpacetimeParams p{m, 10.0, 1, Family::Geon};
        const auto h = harvest(pair_at_distance(d, 0.5, gap, p), p);
        samples.push_back({h.p_a, h.p_b, h.x, 0.0});
      }
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double pa = 0.01 + 0.5 * u(rng), pb = 0.01 + 0.5 * u(rng);
    const double xmag = 0.8 * u(rng);
    const double cmag = 0.9 * u(rng) * std::sqrt(pa * pb);
    samples.push_back({pa, pb, std::polar(xmag, 2.0 * std::numbers::pi * u(rng)),
                       std::polar(cmag, 2.0 * std::numbers::pi * u(rng))});
  }
  const double coupling_sq = 1e-4;
  double worst = 0.0;
  for (const auto& s : samples) {
    const double reduced = concurrence(s.pa, s.pb, std::abs(s.x));
    const auto rho = assemble_density_matrix(s.pa, s.pb, s.x, s.c, coupling_sq);
    worst = std::max(worst, std::abs(concurrence_general(rho) / coupling_sq - reduced));
  }
  return finish("concurrence reduced formula vs eigenvalues", worst, 1e-12,
                std::to_string(samples.size()) + " states, coupling^2 = 1e-4");
}

Check check_swap() {
  double worst = 0.0;
  for (Family f : {Family::BTZ, Family::Geon})
    for (double m : {1.0, 0.01})
      for (double gap : {0.1, 1.0}) {
        const SpacetimeParams p{m, 10.0, 1, f};
        const DetectorPair ab = pair_at_distance(1.0, 0.5, gap, p);
        const DetectorPair ba{ab.b, ab.a};
        worst = std::max(worst, rel_dev(std::abs(x_total(ba, p).value),
                                        std::abs(x_total(ab, p).value)));
      }
  return finish("|X| swap symmetry", worst, 1e-12, "8 configurations, relative");
}

Check check_delta_p_sign() {
  double lowest = INFINITY;
  int count = 0;
  for (double m : {10.0, 1.0, 0.1, 0.01, 0.001})
    for (double d : {0.05, 1.0, 5.0})
      for (double gap : {0.01, 1.0, 4.0}) {
        const SpacetimeParams p{m, 10.0, 1, Family::Geon};
        lowest = std::min(lowest, delta_p(detector_at_distance(d, gap, p), p).value);
        ++count;
      }
  Check c{"geon correction to P positive (zeta = 1)", lowest > 0.0, lowest, 0.0,
          std::to_string(count) + " configurations; measured = smallest value"};
  return c;
}

Check check_zeta_zero() {
  // Exact quadrature counts with zeta = 0, and the value rebuilt from the
  // thermal term and the n >= 1 minus-terms alone.
  int mismatches = 0;
  double worst = 0.0;
  const QuadratureSpec q;
  for (double m : {1.0, 0.01}) {
    const SpacetimeParams p0{m, 10.0, 0, Family::Geon};
    const SpacetimeParams p1{m, 10.0, 1, Family::Geon};
    const DetectorPair pair = pair_at_distance(1.0, 0.5, 0.1, p0);

    const Evaluation pb0 = p_btz(pair.a, p0);
    const Evaluation pb1 = p_btz(pair.a, p1);
    if (pb0.integrals != 1 + pb0.images) ++mismatches;
    if (pb1.integrals != 2 + 2 * pb1.images) ++mismatches;
    const Evaluation dp0 = delta_p(pair.a, p0);
    if (dp0.integrals != dp0.images + 1) ++mismatches;
    const ComplexEvaluation xb0 = x_btz(pair, p0);
    if (xb0.integrals != xb0.images + 1) ++mismatches;
    const Evaluation dx0 = delta_x(pair, p0);
    if (dx0.integrals != dx0.images + 1) ++mismatches;

    const PTermParams t(pair.a, p0);
    double rebuilt = 0.5 * integrate_thermal(t.gap(), t.temperature(), q).value;
    for (int n = 1; n <= pb0.images; ++n)
      rebuilt += integrate_branchcut(t.alpha(n, -1), t.damping(), t.freq(), q).value /
                 std::sqrt(2.0 * std::numbers::pi);
    worst = std::max(worst, rel_dev(pb0.value, rebuilt));
  }
  Check c = finish("zeta = 0 removes every zeta-term", worst, 1e-14,
                   "term-count mismatches: " + std::to_string(mismatches));
  c.passed = c.passed && mismatches == 0;
  return c;
}

Check check_redshift_ratio() {
  double excess = -INFINITY;
  bool saturates = true;
  for (double g : {1e-6, 0.03, 1.0, 7.0, 1e4}) saturates = saturates && redshift_ratio(g, g) == 0.5;
  for (double m : {1.0, 0.01})
    for (double d : {0.05, 1.0, 10.0})
      for (double s : {1e-6, 0.5, 5.0}) {
        const SpacetimeParams p{m, 10.0, 1, Family::BTZ};
        const DetectorPair pair = pair_at_distance(d, s, 0.1, p);
        const XTermParams t(pair, p);
        excess = std::max(excess, t.redshift_ratio() - 0.5);
        const double direct = redshift_ratio(redshift(pair.a.radius, p), redshift(pair.b.radius, p));
        if (std::abs(direct - t.redshift_ratio()) > 1e-13) saturates = false;
      }
  Check c{"redshift ratio bound, saturated at equal redshifts", saturates && excess <= 0.0,
          excess, 0.0, "measured = max(ratio - 1/2) over distinct pairs"};
  return c;
}

Check check_image_decay() {
  double worst = 0.0;
  const QuadratureSpec q;
  for (double m : {1.0, 0.1, 0.01})
    for (double gap : {0.1, 1.0}) {
      const SpacetimeParams p{m, 10.0, 1, Family::Geon};
      const DetectorPair pair = pair_at_distance(1.0, 0.5, gap, p);
      const PTermParams tp(pair.a, p);
      const XTermParams tx(pair, p);
      const double bound = std::exp(-0.5 * std::numbers::pi * std::sqrt(m));
      std::array<double, 4> prev{};
      for (int n = 2; n <= 10; ++n) {
        const std::array<double, 4> cur{std::abs(p_btz_image_term(tp, n, 1, q)),
                                        std::abs(delta_p_image_term(tp, n, 1, q)),
                                        std::abs(x_btz_image_term(tx, n, 1, q)),
                                        std::abs(delta_x_image_term(tx, n, 1, q))};
        if (n > 2)
          for (int k = 0; k < 4; ++k)
            if (prev[k] > 1e-250) worst = std::max(worst, cur[k] / prev[k] / bound);
        prev = cur;
      }
    }
  return finish("image-term decay ratio within exp(-pi sqrt(M) / 2)", worst, 1.0,
                "measured = max ratio / bound, n = 2..10");
}

Check check_geometry() {
  double worst = 0.0;
  for (double m : {10.0, 1.0, 0.01, 1e-4})
    for (double l : {1.0, 10.0}) {
      const SpacetimeParams p{m, l, 1, Family::BTZ};
      for (double d : {0.05, 1.0, 10.0, 40.0}) {
        const double r = radius_from_distance(d, p);
        worst = std::max(worst, rel_dev(distance_from_horizon(r, p), d));
        const double r2 = radius_from_distance(d + 0.5, p);
        worst = std::max(worst, rel_dev(proper_distance(r, r2, p), 0.5));
        worst = std::max(worst, rel_dev(radius_from_distance(distance_from_horizon(r2, p), p), r2));
      }
    }
  return finish("geometry round trips", worst, 1e-10, "relative");
}

}  // namespace

Tier tier_from_string(std::string_view name) {
  if (name == "quick") return Tier::Quick;
  if (name == "full") return Tier::Full;
  throw DomainError("unknown tier '" + std::string(name) + "' (expected quick or full)");
}

std::vector<Check> oracle_checks(Tier tier, const OracleSpec& spec) {
  std::vector<Family> families{Family::BTZ};
  std::vector<double> gaps{0.1, 1.0};
  if (tier == Tier::Full) {
    families.push_back(Family::Geon);
    gaps.insert(gaps.begin(), 0.01);
  }
  std::vector<Check> out;
  for (double m : {1.0, 0.01})
    for (Family f : families)
      for (double gap : gaps) {
        const SpacetimeParams p{m, 10.0, 1, f};
        const DetectorPair pair = pair_at_distance(1.0, 0.5, gap, p);
        const std::string where = describe(m, f, gap);
        try {
          const HarvestResult h = harvest(pair, p);
          const double pa = p_direct(pair.a, p, spec).value.real();
          const double pb = p_direct(pair.b, p, spec).value.real();
          const double x = std::abs(x_direct(pair, p, spec).value);
          const double dev_p = std::max(rel_dev(h.p_a, pa), rel_dev(h.p_b, pb));
          out.push_back(finish("oracle P (" + where + ")", dev_p, 0.01, "relative"));
          out.push_back(finish("oracle |X| (" + where + ")", rel_dev(h.x_abs, x), 0.02, "relative"));
          const double c = concurrence(pa, pb, x);
          if (c > 0.01)
            out.push_back(finish("oracle C (" + where + ")", rel_dev(h.concurrence, c), 0.03,
                                 "relative"));
        } catch (const std::exception& e) {
          out.push_back(Check{"oracle (" + where + ")", false, NAN, 0.0, e.what()});
        }
      }
  return out;
}

std::vector<Check> invariant_checks() {
  using Fn = Check (*)();
  std::vector<Check> out;
  for (Fn fn : {check_concurrence_forms, check_swap, check_delta_p_sign, check_zeta_zero,
                check_redshift_ratio, check_image_decay, check_geometry}) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back(Check{"invariant", false, NAN, 0.0, e.what()});
    }
  }
  return out;
}

}  // namespace geonharvest
