#include "geonharvest/shadow.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "geonharvest/error.hpp"
#include "parallel.hpp"

namespace geonharvest {

namespace {

double margin_at(const ShadowQuery& q, double d) {
  const DetectorPair pair = pair_at_distance(d, q.separation, q.gap, q.spacetime);
  return entanglement_margin(harvest(pair, q.spacetime, q.observables));
}

int classify(double diff, double floor) {
  if (diff > floor) return 1;
  if (diff < -floor) return -1;
  return 0;
}

}  // namespace

std::string_view to_string(ShadowStatus s) {
  switch (s) {
    case ShadowStatus::Ok: return "ok";
    case ShadowStatus::FullyShadowed: return "fully_shadowed";
    case ShadowStatus::NoShadow: return "no_shadow";
  }
  return "unknown";
}

double entanglement_margin(const HarvestResult& h) {
  return h.x_abs - std::sqrt(std::max(h.p_a, 0.0) * std::max(h.p_b, 0.0));
}

void ShadowQuery::validate() const {
  spacetime.validate();
  if (!(separation > 0.0)) throw DomainError("shadow: separation must be positive");
  if (!(gap >= 0.0)) throw DomainError("shadow: gap must be nonnegative");
  if (!(d_min > 0.0) || !(d_max <= 20.0) || !(d_min < d_max))
    throw DomainError("shadow: scan range must satisfy 0 < d_min < d_max <= 20");
  if (scan_points < 2) throw DomainError("shadow: need at least 2 scan points");
  if (!(tol > 0.0)) throw DomainError("shadow: tolerance must be positive");
}

ShadowResult d_death(const ShadowQuery& q) {
  q.validate();
  const int n = q.scan_points;
  std::vector<double> grid(n);
  const double step = std::log(q.d_max / q.d_min) / (n - 1);
  for (int i = 0; i < n; ++i) grid[i] = q.d_min * std::exp(step * i);
  grid.back() = q.d_max;

  const auto margin = detail::parallel_map<double>(
      grid.size(), q.threads, [&](std::size_t i) { return margin_at(q, grid[i]); });

  ShadowResult r;
  r.evaluations = n;
  int cross = -1;
  for (int i = 1; i < n && cross < 0; ++i)
    if (margin[i - 1] <= 0.0 && margin[i] > 0.0) cross = i;

  if (cross < 0) {
    if (margin[0] > 0.0) {
      r.status = ShadowStatus::NoShadow;
      r.d_death = r.lo = r.hi = q.d_min;
    } else {
      r.status = ShadowStatus::FullyShadowed;
      r.d_death = std::numeric_limits<double>::quiet_NaN();
      r.lo = q.d_min;
      r.hi = q.d_max;
    }
    return r;
  }

  double lo = grid[cross - 1], hi = grid[cross];
  while (hi - lo >= q.tol) {
    const double mid = 0.5 * (lo + hi);
    (margin_at(q, mid) > 0.0 ? hi : lo) = mid;
    ++r.evaluations;
  }
  r.lo = lo;
  r.hi = hi;
  r.d_death = hi;
  return r;
}

void CrossoverQuery::validate() const {
  spacetime.validate();
  if (!(separation > 0.0)) throw DomainError("crossover: separation must be positive");
  if (!(d_a > 0.0)) throw DomainError("crossover: d_a must be positive");
  if (!(gap_min >= 0.0) || !(gap_min < gap_max))
    throw DomainError("crossover: gap range must satisfy 0 <= gap_min < gap_max");
  if (scan_points < 2) throw DomainError("crossover: need at least 2 scan points");
  if (!(tol > 0.0)) throw DomainError("crossover: tolerance must be positive");
  if (!(noise_floor >= 0.0)) throw DomainError("crossover: noise floor must be nonnegative");
}

double concurrence_difference(const CrossoverQuery& q, double gap) {
  SpacetimeParams btz = q.spacetime;
  btz.family = Family::BTZ;
  SpacetimeParams geon = q.spacetime;
  geon.family = Family::Geon;
  const double c_btz =
      harvest(pair_at_distance(q.d_a, q.separation, gap, btz), btz, q.observables).concurrence;
  const double c_geon =
      harvest(pair_at_distance(q.d_a, q.separation, gap, geon), geon, q.observables).concurrence;
  return c_geon - c_btz;
}

CrossoverResult crossover_gap(const CrossoverQuery& q) {
  q.validate();
  const int n = q.scan_points;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i)
    grid[i] = q.gap_min + (q.gap_max - q.gap_min) * i / (n - 1);

  const auto diff = detail::parallel_map<double>(
      grid.size(), q.threads,
      [&](std::size_t i) { return concurrence_difference(q, grid[i]); });

  CrossoverResult r;
  r.evaluations = n;
  // Zeros (inside the noise floor) are transparent: a crossing is the last
  // negative point followed by the next positive one.
  int last_neg = -1;
  int first_lo = -1, first_hi = -1;
  for (int i = 0; i < n; ++i) {
    const int s = classify(diff[i], q.noise_floor);
    if (s < 0) {
      last_neg = i;
    } else if (s > 0 && last_neg >= 0) {
      ++r.crossings;
      if (first_hi < 0) {
        first_lo = last_neg;
        first_hi = i;
      }
      last_neg = -1;
    }
  }
  if (first_hi < 0) return r;

  double lo = grid[first_lo], hi = grid[first_hi];
  while (hi - lo >= q.tol) {
    const double mid = 0.5 * (lo + hi);
    (concurrence_difference(q, mid) > q.noise_floor ? hi : lo) = mid;
    ++r.evaluations;
  }
  r.lo = lo;
  r.hi = hi;
  r.gap = 0.5 * (lo + hi);
  return r;
}

}  // namespace geonharvest
