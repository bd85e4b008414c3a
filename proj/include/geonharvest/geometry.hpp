#pragma once

#include <string_view>

namespace geonharvest {

// All lengths, times and inverse energies are measured in units of the
// switching width, which is fixed to 1.

enum class Family { BTZ, Geon };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

// Static, non-rotating BTZ exterior (or its RP^2 geon quotient).
//   zeta = -1 Neumann, 0 transparent, +1 Dirichlet at spatial infinity.
struct SpacetimeParams {
  double mass = 1.0;
  double ads_length = 10.0;
  int zeta = 1;
  Family family = Family::BTZ;

  // Throws DomainError unless mass > 0, ads_length > 0, zeta in {-1, 0, 1}.
  void validate() const;
  double horizon() const;
};

// A static detector at fixed (R, Phi).
struct DetectorConfig {
  double radius = 0.0;
  double angle = 0.0;
  double gap = 0.0;
};

// Two identical detectors at the same angle; A is the one nearer the horizon.
struct DetectorPair {
  DetectorConfig a;
  DetectorConfig b;
};

double horizon_radius(double mass, double ads_length);

// gamma = sqrt(R^2 - r_h^2) / l. Throws if R <= r_h.
double redshift(double radius, const SpacetimeParams& p);

// Radial proper distance between two static radii, r_h <= R_a <= R_b.
double proper_distance(double r_a, double r_b, const SpacetimeParams& p);

// Proper distance from the horizon to R: l * arccosh(R / r_h).
double distance_from_horizon(double radius, const SpacetimeParams& p);

// Inverse of distance_from_horizon: r_h * cosh(d / l).
double radius_from_distance(double distance, const SpacetimeParams& p);

// Builds a detector d_a from the horizon at gap `gap`.
DetectorConfig detector_at_distance(double distance, double gap,
                                    const SpacetimeParams& p);

// Builds a pair with A at proper distance d_a from the horizon and B a proper
// distance `separation` further out.
DetectorPair pair_at_distance(double d_a, double separation, double gap,
                              const SpacetimeParams& p);

void validate(const DetectorConfig& d, const SpacetimeParams& p);
void validate(const DetectorPair& pair, const SpacetimeParams& p);

}  // namespace geonharvest
