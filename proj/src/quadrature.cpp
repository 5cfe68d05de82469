#include "dgeig/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace dgeig {

void gauss_jacobi(int npoints, double a, double b, Eigen::VectorXd& nodes,
                  Eigen::VectorXd& weights) {
  if (npoints < 1) throw std::invalid_argument("gauss_jacobi: need at least one point");
  // Golub-Welsch on the symmetric Jacobi matrix of the three-term recurrence.
  Eigen::VectorXd diag(npoints), sub(std::max(npoints - 1, 0));
  diag[0] = (b - a) / (a + b + 2.0);
  for (int n = 1; n < npoints; ++n) {
    const double s = 2.0 * n + a + b;
    diag[n] = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int n = 1; n < npoints; ++n) {
    const double s = 2.0 * n + a + b;
    const double num = 4.0 * n * (n + a) * (n + b) * (n + a + b);
    const double den = s * s * (s + 1.0) * (s - 1.0);
    sub[n - 1] = std::sqrt(num / den);
  }
  const double mu0 =
      std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) /
      std::tgamma(a + b + 2.0);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_jacobi: tridiagonal eigensolve failed");
  nodes = es.eigenvalues();
  weights.resize(npoints);
  for (int i = 0; i < npoints; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

QuadratureRule make_quadrature(QuadDomain domain, int exactness) {
  if (exactness < 0 || exactness > 25)
    throw std::invalid_argument("quadrature exactness must lie in [0, 25], got " +
                                std::to_string(exactness));
  const int np = (exactness + 2) / 2;  // ceil((exactness+1)/2)
  QuadratureRule rule;
  rule.domain = domain;
  rule.exactness = exactness;

  if (domain == QuadDomain::Edge) {
    Eigen::VectorXd t, w;
    gauss_jacobi(np, 0.0, 0.0, t, w);
    rule.points.setZero(np, 2);
    rule.weights.resize(np);
    for (int i = 0; i < np; ++i) {
      rule.points(i, 0) = 0.5 * (t[i] + 1.0);
      rule.weights[i] = 0.5 * w[i];
    }
    return rule;
  }

  // Duffy transform x = (1-y)(1+u)/2, y = (1+t)/2 turns the triangle integral
  // into (1/8) * int_{-1}^{1} int_{-1}^{1} (1-t) f du dt: Gauss-Legendre in u,
  // Gauss-Jacobi(1,0) in t. Exact for total degree <= 2*np - 1.
  Eigen::VectorXd ug, uw, tg, tw;
  gauss_jacobi(np, 0.0, 0.0, ug, uw);
  gauss_jacobi(np, 1.0, 0.0, tg, tw);
  rule.points.resize(np * np, 2);
  rule.weights.resize(np * np);
  int q = 0;
  for (int r = 0; r < np; ++r) {
    const double y = 0.5 * (tg[r] + 1.0);
    for (int c = 0; c < np; ++c, ++q) {
      rule.points(q, 0) = (1.0 - y) * 0.5 * (ug[c] + 1.0);
      rule.points(q, 1) = y;
      rule.weights[q] = uw[c] * tw[r] / 8.0;
    }
  }
  return rule;
}

}  // namespace dgeig
