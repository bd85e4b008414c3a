#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "geonharvest/error.hpp"
#include "geonharvest/observables.hpp"

namespace geonharvest {

namespace {

using Mat4 = Eigen::Matrix4cd;

Mat4 to_eigen(const DensityMatrix& rho) {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = rho[i][j];
  return m;
}

}  // namespace

double concurrence_general(const DensityMatrix& rho_in, double herm_tol) {
  const Mat4 rho = to_eigen(rho_in);
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
    throw DomainError("concurrence_general: density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-8)
    throw DomainError("concurrence_general: density matrix must have unit trace");

  // sigma_y (x) sigma_y is real: anti-diagonal (-1, 1, 1, -1).
  Mat4 flip = Mat4::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Mat4 spin_flipped = flip * rho.conjugate() * flip;
  const Mat4 r = rho * spin_flipped;

  Eigen::ComplexEigenSolver<Mat4> solver(r, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("concurrence_general: eigen decomposition failed");
  std::array<double, 4> w{};
  for (int i = 0; i < 4; ++i) w[i] = std::sqrt(std::max(0.0, solver.eigenvalues()[i].real()));
  std::sort(w.begin(), w.end(), std::greater<>());
  return std::max(0.0, w[0] - w[1] - w[2] - w[3]);
}

DensityMatrix assemble_density_matrix(double p_a, double p_b,
                                      std::complex<double> x,
                                      std::complex<double> c,
                                      double coupling_sq) {
  if (!(coupling_sq > 0.0)) throw DomainError("coupling^2 must be positive");
  const double pa = coupling_sq * p_a;
  const double pb = coupling_sq * p_b;
  const std::complex<double> xs = coupling_sq * x;
  const std::complex<double> cs = coupling_sq * c;

  // rho_44 solves r = |X|^2 / (1 - P_A - P_B - r) + P_A P_B to leading order.
  const double base = 1.0 - pa - pb;
  const double r = std::norm(xs) / base + pa * pb;

  DensityMatrix rho{};
  rho[0][0] = base - r;
  rho[0][3] = std::conj(xs);
  rho[1][1] = pb;
  rho[1][2] = std::conj(cs);
  rho[2][1] = cs;
  rho[2][2] = pa;
  rho[3][0] = xs;
  rho[3][3] = r;
  return rho;
}

}  // namespace geonharvest
