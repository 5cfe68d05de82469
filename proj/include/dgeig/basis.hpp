#pragma once

#include <Eigen/Core>

namespace dgeig {

// Orthonormal polynomial basis of P_k on the reference triangle
// {x >= 0, y >= 0, x + y <= 1}: a Koornwinder/Dubiner-type family evaluated
// through singularity-free polynomial recurrences. Element mass matrices of
// affine-mapped elements are exact multiples of the identity.
//
// Functions are ordered by total degree, then by the principal index, so the
// first (k)(k+1)/2 functions are exactly the degree-(k-1) basis.
struct ScalarBasis {
  int degree = 0;
  int size = 1;  // (k+1)(k+2)/2

  Eigen::VectorXd eval(const Eigen::Vector2d& p) const;
  void eval(const Eigen::Vector2d& p, Eigen::VectorXd& values,
            Eigen::Matrix<double, Eigen::Dynamic, 2>& gradients) const;
};

// k in [0, 10]; degree 0 is the constant basis used for rotation spaces at
// the lowest stress degree.
ScalarBasis make_scalar_basis(int k);

}  // namespace dgeig
