#pragma once

#include <array>
#include <complex>

#include "geonharvest/geometry.hpp"
#include "geonharvest/quadrature.hpp"

namespace geonharvest {

// Controls for the image sums behind every observable.
struct ObservableSpec {
  QuadratureSpec quad;
  // Summation stops once two consecutive image terms are below
  // image_rel_tol * |partial sum| (or image_abs_tol, whichever is larger).
  double image_rel_tol = 1e-10;
  double image_abs_tol = 1e-16;
  int max_images = 5000;
};

// gamma_A gamma_B / (gamma_A^2 + gamma_B^2); at most 1/2, reached only for
// gamma_A = gamma_B.
double redshift_ratio(double gamma_a, double gamma_b);

// Per-detector parameters of the transition-probability integrals.
class PTermParams {
 public:
  PTermParams(const DetectorConfig& d, const SpacetimeParams& p);

  double temperature() const { return temperature_; }
  double damping() const { return damping_; }
  double freq() const { return freq_; }
  double redshift() const { return redshift_; }
  double gap() const { return gap_; }

  // arccosh[(r_h^2 / gamma^2 l^2)((R^2 / r_h^2) cosh(2 pi n r_h / l) +- 1)];
  // alpha(0, -1) is exactly 0.
  double alpha(int n, int sign) const;
  // Same bracket with 2 pi (n + 1/2); always >= 1 for sign = -1.
  double z(int n, int sign) const;

 private:
  double rapidity_;  // proper distance to the horizon over l
  double root_mass_;
  double redshift_;
  double gap_;
  double temperature_;
  double damping_;
  double freq_;
};

// Two-detector parameters of the non-local correlation integrals. Accepts the
// pair in either order; the radii must differ.
class XTermParams {
 public:
  XTermParams(const DetectorPair& pair, const SpacetimeParams& p);

  double damping() const { return damping_; }
  double freq(int sign) const { return sign < 0 ? freq_minus_ : freq_plus_; }
  // gamma_A gamma_B / (gamma_A^2 + gamma_B^2), at most 1/2.
  double redshift_ratio() const { return ratio_; }
  double gap() const { return gap_; }

  double alpha(int n, int sign) const;
  double z(int n, int sign) const;

 private:
  double rapidity_a_;
  double rapidity_b_;
  double root_mass_;
  double gap_;
  double ratio_;
  double damping_;
  double freq_minus_;
  double freq_plus_;
};

struct Evaluation {
  double value = 0.0;
  double err = 0.0;
  int images = 0;     // highest image index summed
  int integrals = 0;  // number of one-dimensional integrals evaluated
};

struct ComplexEvaluation {
  std::complex<double> value;
  double err = 0.0;
  int images = 0;
  int integrals = 0;
};

// Image brackets, before prefactors. `integrals` (if given) is incremented by
// the number of quadratures performed; zeta-terms are skipped for zeta = 0.
double p_btz_image_term(const PTermParams& t, int n, int zeta,
                        const QuadratureSpec& q, int* integrals = nullptr,
                        double* err = nullptr);
double delta_p_image_term(const PTermParams& t, int n, int zeta,
                          const QuadratureSpec& q, int* integrals = nullptr,
                          double* err = nullptr);
std::complex<double> x_btz_image_term(const XTermParams& t, int n, int zeta,
                                      const QuadratureSpec& q,
                                      int* integrals = nullptr,
                                      double* err = nullptr);
double delta_x_image_term(const XTermParams& t, int n, int zeta,
                          const QuadratureSpec& q, int* integrals = nullptr,
                          double* err = nullptr);

// Transition probability per coupling^2 in BTZ.
Evaluation p_btz(const DetectorConfig& d, const SpacetimeParams& p,
                 const ObservableSpec& spec = {});
// Geon correction to the transition probability.
Evaluation delta_p(const DetectorConfig& d, const SpacetimeParams& p,
                   const ObservableSpec& spec = {});
// BTZ value, plus the geon correction when p.family == Geon.
Evaluation p_total(const DetectorConfig& d, const SpacetimeParams& p,
                   const ObservableSpec& spec = {});

ComplexEvaluation x_btz(const DetectorPair& pair, const SpacetimeParams& p,
                        const ObservableSpec& spec = {});
// Real: the geon images are free of branch points for static detectors.
Evaluation delta_x(const DetectorPair& pair, const SpacetimeParams& p,
                   const ObservableSpec& spec = {});
ComplexEvaluation x_total(const DetectorPair& pair, const SpacetimeParams& p,
                          const ObservableSpec& spec = {});

// 2 max(0, |X| - sqrt(P_A P_B)). Tiny negative probabilities (quadrature
// noise, |P| <= tol) are clamped; anything below that throws NumericalError.
double concurrence(double p_a, double p_b, double x_abs, double tol = 1e-10);

struct HarvestResult {
  double p_a = 0.0;
  double p_b = 0.0;
  std::complex<double> x;
  double x_abs = 0.0;
  double concurrence = 0.0;
  struct Errors {
    double p_a = 0.0;
    double p_b = 0.0;
    double x = 0.0;
    double concurrence = 0.0;
  } err;
  int images = 0;
};

HarvestResult harvest(const DetectorPair& pair, const SpacetimeParams& p,
                      const ObservableSpec& spec = {});

// 4x4 two-qubit density matrix, basis |gg>, |ge>, |eg>, |ee>.
using DensityMatrix = std::array<std::array<std::complex<double>, 4>, 4>;

// Wootters concurrence from the eigenvalues of rho (sy x sy) rho* (sy x sy).
// Throws DomainError if rho is not Hermitian.
double concurrence_general(const DensityMatrix& rho, double herm_tol = 1e-12);

// Leading-order harvested state for coupling^2 = coupling_sq:
//   [[1 - P_A - P_B - r, 0, 0, X*], [0, P_B, C*, 0], [0, C, P_A, 0], [X, 0, 0, r]]
// where the order-coupling^4 population r = |X|^2 / (1 - P_A - P_B) + P_A P_B
// keeps the state positive at small coupling.
DensityMatrix assemble_density_matrix(double p_a, double p_b,
                                      std::complex<double> x,
                                      std::complex<double> c,
                                      double coupling_sq);

}  // namespace geonharvest
