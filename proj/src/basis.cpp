#include "dgeig/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace dgeig {

namespace {

// Index of the pair (i, j) in the graded ordering: all pairs of total degree
// d = i + j come before degree d + 1, ordered by increasing i within a degree.
inline int pair_index(int i, int j) {
  const int d = i + j;
  return d * (d + 1) / 2 + i;
}

}  // namespace

ScalarBasis make_scalar_basis(int k) {
  if (k < 0 || k > 10)
    throw std::invalid_argument("basis degree k must lie in [0, 10], got " + std::to_string(k));
  ScalarBasis b;
  b.degree = k;
  b.size = (k + 1) * (k + 2) / 2;
  return b;
}

Eigen::VectorXd ScalarBasis::eval(const Eigen::Vector2d& p) const {
  Eigen::VectorXd values;
  Eigen::Matrix<double, Eigen::Dynamic, 2> gradients;
  eval(p, values, gradients);
  return values;
}

void ScalarBasis::eval(const Eigen::Vector2d& p, Eigen::VectorXd& values,
                       Eigen::Matrix<double, Eigen::Dynamic, 2>& gradients) const {
  const int k = degree;
  const double x = p.x(), y = p.y();
  values.resize(size);
  gradients.resize(size, 2);

  // Principal family f_i = P_i(u / w) w^i with u = 2x + y - 1, w = 1 - y,
  // computed by the homogenized Legendre recurrence
  //   (i+1) f_{i+1} = (2i+1) u f_i - i w^2 f_{i-1},
  // which is polynomial in (x, y) and needs no division by w.
  const double u = 2.0 * x + y - 1.0;
  const double w = 1.0 - y;
  Eigen::VectorXd f(k + 1), fx(k + 1), fy(k + 1);
  f[0] = 1.0;
  fx[0] = 0.0;
  fy[0] = 0.0;
  if (k >= 1) {
    f[1] = u;
    fx[1] = 2.0;
    fy[1] = 1.0;
  }
  for (int i = 1; i < k; ++i) {
    const double a = 2.0 * i + 1.0;
    f[i + 1] = (a * u * f[i] - i * w * w * f[i - 1]) / (i + 1);
    fx[i + 1] = (a * (2.0 * f[i] + u * fx[i]) - i * w * w * fx[i - 1]) / (i + 1);
    fy[i + 1] = (a * (f[i] + u * fy[i]) - i * (-2.0 * w * f[i - 1] + w * w * fy[i - 1])) / (i + 1);
  }

  // Secondary family: Jacobi polynomials P_j^(2i+1, 0)(t) with t = 2y - 1.
  const double t = 2.0 * y - 1.0;
  Eigen::VectorXd g(k + 1), gt(k + 1);
  for (int i = 0; i <= k; ++i) {
    const double alpha = 2.0 * i + 1.0;
    const int jmax = k - i;
    g[0] = 1.0;
    gt[0] = 0.0;
    if (jmax >= 1) {
      g[1] = 0.5 * (alpha + 2.0) * t + 0.5 * alpha;
      gt[1] = 0.5 * (alpha + 2.0);
    }
    for (int j = 2; j <= jmax; ++j) {
      const double c0 = 2.0 * j * (j + alpha) * (2.0 * j + alpha - 2.0);
      const double c1 = 2.0 * j + alpha - 1.0;
      const double c2 = (2.0 * j + alpha) * (2.0 * j + alpha - 2.0);
      const double c3 = alpha * alpha;
      const double c4 = 2.0 * (j + alpha - 1.0) * (j - 1.0) * (2.0 * j + alpha);
      g[j] = (c1 * ((c2 * t + c3) * g[j - 1]) - c4 * g[j - 2]) / c0;
      gt[j] = (c1 * ((c2 * t + c3) * gt[j - 1] + c2 * g[j - 1]) - c4 * gt[j - 2]) / c0;
    }
    for (int j = 0; j <= jmax; ++j) {
      const int idx = pair_index(i, j);
      const double c = std::sqrt(2.0 * (2.0 * i + 1.0) * (i + j + 1.0));
      values[idx] = c * f[i] * g[j];
      gradients(idx, 0) = c * fx[i] * g[j];
      gradients(idx, 1) = c * (fy[i] * g[j] + 2.0 * f[i] * gt[j]);
    }
  }
}

}  // namespace dgeig
