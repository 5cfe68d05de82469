#include "dgeig/material.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dgeig {

MaterialModel material_from_E_nu(double E, double nu, double rho) {
  if (!(E > 0.0)) throw std::invalid_argument("E: Young modulus must be positive");
  if (!(rho > 0.0)) throw std::invalid_argument("rho: mass density must be positive");
  constexpr double half_tol = 1e-12;
  if (!(nu > 0.0) || nu > 0.5 + half_tol)
    throw std::invalid_argument("nu: Poisson ratio must lie in (0, 1/2]");
  MaterialModel m;
  m.rho = rho;
  m.E = E;
  m.mu = E / (2.0 * (1.0 + nu));
  m.incompressible = nu >= 0.5 - half_tol;
  if (m.incompressible) {
    m.nu = 0.5;
    m.lambda = std::numeric_limits<double>::infinity();
  } else {
    m.nu = nu;
    m.lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  }
  return m;
}

double compliance_pairing(const Eigen::Matrix2d& sigma, const Eigen::Matrix2d& tau,
                          const MaterialModel& m) {
  const double tr_s = sigma.trace(), tr_t = tau.trace();
  const Eigen::Matrix2d dev_s = sigma - 0.5 * tr_s * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d dev_t = tau - 0.5 * tr_t * Eigen::Matrix2d::Identity();
  double value = dev_s.cwiseProduct(dev_t).sum() / (2.0 * m.mu);
  if (!m.incompressible) value += tr_s * tr_t / (2.0 * (2.0 * m.lambda + 2.0 * m.mu));
  return value;
}

}  // namespace dgeig
