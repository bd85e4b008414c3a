#pragma once

#include <optional>
#include <string_view>

#include "geonharvest/geometry.hpp"
#include "geonharvest/observables.hpp"

namespace geonharvest {

enum class ShadowStatus {
  Ok,             // a zero crossing was bracketed and refined
  FullyShadowed,  // no entanglement anywhere in the scan range
  NoShadow,       // entangled at every scan point
};

std::string_view to_string(ShadowStatus s);

struct ShadowQuery {
  SpacetimeParams spacetime;
  double separation = 0.5;
  double gap = 0.01;
  // Scan over the proper distance of A from the horizon, log-spaced.
  double d_min = 0.01;
  double d_max = 20.0;
  int scan_points = 40;
  double tol = 1e-3;
  ObservableSpec observables;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct ShadowResult {
  ShadowStatus status = ShadowStatus::Ok;
  // Innermost distance at which concurrence turns positive moving outward.
  // d_min for NoShadow, NaN for FullyShadowed.
  double d_death = 0.0;
  double lo = 0.0;  // final bracket: entangled at hi, not at lo
  double hi = 0.0;
  int evaluations = 0;
};

ShadowResult d_death(const ShadowQuery& q);

// |X| - sqrt(P_A P_B): positive exactly where concurrence is.
double entanglement_margin(const HarvestResult& h);

struct CrossoverQuery {
  SpacetimeParams spacetime;  // family is ignored; both are evaluated
  double separation = 0.5;
  double d_a = 1.0;
  double gap_min = 0.01;
  double gap_max = 2.0;
  int scan_points = 40;
  double tol = 1e-3;
  // |C_geon - C_BTZ| at or below this counts as no difference.
  double noise_floor = 1e-6;
  ObservableSpec observables;
  unsigned threads = 0;

  void validate() const;
};

struct CrossoverResult {
  // Lowest gap at which C_geon - C_BTZ turns from negative to positive.
  std::optional<double> gap;
  double lo = 0.0;
  double hi = 0.0;
  int crossings = 0;  // negative-to-positive transitions seen in the scan
  int evaluations = 0;
};

// C_geon - C_BTZ at one gap.
double concurrence_difference(const CrossoverQuery& q, double gap);

CrossoverResult crossover_gap(const CrossoverQuery& q);

}  // namespace geonharvest
