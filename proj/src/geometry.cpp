#include "geonharvest/geometry.hpp"

#include <cmath>
#include <string>

#include "geonharvest/error.hpp"

namespace geonharvest {

std::string_view to_string(Family family) {
  return family == Family::BTZ ? "btz" : "geon";
}

Family family_from_string(std::string_view name) {
  if (name == "btz" || name == "BTZ") return Family::BTZ;
  if (name == "geon" || name == "Geon") return Family::Geon;
  throw DomainError("unknown spacetime family '" + std::string(name) + "'");
}

void SpacetimeParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw DomainError("mass must be positive and finite");
  if (!(ads_length > 0.0) || !std::isfinite(ads_length))
    throw DomainError("AdS length must be positive and finite");
  if (zeta < -1 || zeta > 1)
    throw DomainError("boundary condition zeta must be -1, 0 or 1");
}

double SpacetimeParams::horizon() const {
  return horizon_radius(mass, ads_length);
}

double horizon_radius(double mass, double ads_length) {
  if (!(mass > 0.0)) throw DomainError("horizon_radius: mass must be positive");
  if (!(ads_length > 0.0))
    throw DomainError("horizon_radius: AdS length must be positive");
  return ads_length * std::sqrt(mass);
}

double redshift(double radius, const SpacetimeParams& p) {
  const double rh = p.horizon();
  if (!(radius > rh))
    throw DomainError("redshift: detector must lie strictly outside the horizon");
  // R^2 - r_h^2 factored to keep precision near the horizon.
  return std::sqrt((radius - rh) * (radius + rh)) / p.ads_length;
}

double proper_distance(double r_a, double r_b, const SpacetimeParams& p) {
  const double rh = p.horizon();
  if (!(r_a >= rh)) throw DomainError("proper_distance: R_a is inside the horizon");
  if (!(r_b >= r_a)) throw DomainError("proper_distance: requires R_a <= R_b");
  if (r_a == r_b) return 0.0;
  const double num = r_b + std::sqrt((r_b - rh) * (r_b + rh));
  const double den = r_a + std::sqrt((r_a - rh) * (r_a + rh));
  return p.ads_length * std::log(num / den);
}

double distance_from_horizon(double radius, const SpacetimeParams& p) {
  return proper_distance(p.horizon(), radius, p);
}

double radius_from_distance(double distance, const SpacetimeParams& p) {
  if (!(distance >= 0.0))
    throw DomainError("radius_from_distance: distance must be nonnegative");
  return p.horizon() * std::cosh(distance / p.ads_length);
}

DetectorConfig detector_at_distance(double distance, double gap,
                                    const SpacetimeParams& p) {
  if (!(distance > 0.0))
    throw DomainError("detector distance from the horizon must be positive");
  return DetectorConfig{radius_from_distance(distance, p), 0.0, gap};
}

DetectorPair pair_at_distance(double d_a, double separation, double gap,
                              const SpacetimeParams& p) {
  if (!(separation > 0.0))
    throw DomainError("detector separation must be positive");
  return DetectorPair{detector_at_distance(d_a, gap, p),
                      detector_at_distance(d_a + separation, gap, p)};
}

void validate(const DetectorConfig& d, const SpacetimeParams& p) {
  p.validate();
  if (!(d.radius > p.horizon()))
    throw DomainError("detector must lie strictly outside the horizon");
  if (!std::isfinite(d.gap)) throw DomainError("energy gap must be finite");
}

void validate(const DetectorPair& pair, const SpacetimeParams& p) {
  validate(pair.a, p);
  validate(pair.b, p);
  if (!(pair.b.radius > pair.a.radius))
    throw DomainError("detector A must be strictly closer to the horizon than B");
  if (pair.a.angle != pair.b.angle)
    throw DomainError("detectors must share the same angle");
  if (pair.a.gap != pair.b.gap)
    throw DomainError("detectors must have identical energy gaps");
}

}  // namespace geonharvest
