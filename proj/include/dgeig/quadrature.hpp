#pragma once

#include <Eigen/Core>

namespace dgeig {

enum class QuadDomain { Triangle, Edge };

// Quadrature on the reference triangle {x,y >= 0, x+y <= 1} or the reference
// edge [0, 1]. Exact for all polynomials up to the stated algebraic degree;
// all weights positive.
struct QuadratureRule {
  QuadDomain domain = QuadDomain::Triangle;
  int exactness = 0;
  // Triangle: (x, y) reference coordinates. Edge: column 0 holds t in [0, 1].
  Eigen::Matrix<double, Eigen::Dynamic, 2> points;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(weights.size()); }
};

// Edge rules are Gauss-Legendre with ceil((exactness+1)/2) points; triangle
// rules are collapsed-coordinate Gauss-Legendre x Gauss-Jacobi products with
// the same count per direction. Supported exactness: 0..25.
QuadratureRule make_quadrature(QuadDomain domain, int exactness);

// Gauss nodes/weights on [-1, 1] for the Jacobi weight (1-t)^a (1+t)^b.
void gauss_jacobi(int npoints, double a, double b, Eigen::VectorXd& nodes,
                  Eigen::VectorXd& weights);

}  // namespace dgeig
