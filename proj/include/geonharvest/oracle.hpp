#pragma once

#include <complex>
#include <vector>

#include "geonharvest/geometry.hpp"

namespace geonharvest {

// Brute-force evaluation of the leading-order density-matrix elements
// straight from their defining double integrals over the two proper times.
struct OracleSpec {
  // Strictly decreasing regulators for the -i eps prescription.
  std::vector<double> epsilons{1e-2, 1e-3, 1e-4};
  // Proper-time half-width of the integration box.
  double tau_max = 6.0;
  // Composite Gauss-Legendre panels over t_A + t_B.
  int sum_panels = 24;
  // Image-sum tolerance handed to truncation_bound.
  double image_tol = 1e-12;

  void validate() const;
};

struct OracleResult {
  // Linear Richardson extrapolation to eps -> 0 from the last two regulators.
  std::complex<double> value;
  // Raw estimate for each regulator, in OracleSpec::epsilons order.
  std::vector<std::complex<double>> estimates;
  int grid_points = 0;
};

// P_D per coupling^2: int dtau dtau' chi chi e^{-i Omega (tau - tau')} W.
OracleResult p_direct(const DetectorConfig& d, const SpacetimeParams& p,
                      const OracleSpec& spec = {});

// X per coupling^2, with the time-ordered Wightman kernel and phase
// e^{-i Omega (tau_A + tau_B)}.
OracleResult x_direct(const DetectorPair& pair, const SpacetimeParams& p,
                      const OracleSpec& spec = {});

// C per coupling^2: W(x_A, x_B) with phase e^{-i Omega (tau_A - tau_B)}.
// Coincident detectors are allowed.
OracleResult c_direct(const DetectorPair& pair, const SpacetimeParams& p,
                      const OracleSpec& spec = {});

}  // namespace geonharvest
