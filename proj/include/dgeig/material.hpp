#pragma once

#include <Eigen/Core>

namespace dgeig {

// Isotropic linear elastic material. nu = 1/2 selects the incompressible
// limit: lambda is stored as +inf and the trace part of the compliance is
// dropped identically rather than evaluated.
struct MaterialModel {
  double rho = 1.0;
  double E = 1.0;
  double nu = 0.35;
  double lambda = 0.0;
  double mu = 0.0;
  bool incompressible = false;
};

// lambda = E nu / ((1+nu)(1-2nu)), mu = E / (2(1+nu)).
MaterialModel material_from_E_nu(double E, double nu, double rho = 1.0);

// Pointwise compliance density C^{-1} sigma : tau =
//   (1/2mu) dev(sigma):dev(tau) + (tr sigma)(tr tau) / (2(2 lambda + 2 mu)),
// with the trace term dropped in the incompressible limit.
double compliance_pairing(const Eigen::Matrix2d& sigma, const Eigen::Matrix2d& tau,
                          const MaterialModel& m);

}  // namespace dgeig
