#include "dgeig/basis.hpp"
#include "dgeig/quadrature.hpp"
#include "dgeig/spaces.hpp"

#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace dgeig;

namespace {

// Exact integral of x^a y^b over the reference triangle: a! b! / (a+b+2)!.
double monomial_integral(int a, int b) {
  double value = 1.0;
  // a! b! / (a+b+2)! computed as a product to stay in range
  for (int i = 1; i <= a + b + 2; ++i) value /= i;
  for (int i = 1; i <= a; ++i) value *= i;
  for (int i = 1; i <= b; ++i) value *= i;
  return value;
}

std::vector<Eigen::Vector2d> interior_points(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  const auto uniform = [&]() { return (rng() >> 11) * 0x1.0p-53; };
  std::vector<Eigen::Vector2d> pts;
  while (static_cast<int>(pts.size()) < count) {
    const double x = uniform(), y = uniform();
    if (x + y < 0.95 && x > 0.02 && y > 0.02) pts.emplace_back(x, y);
  }
  return pts;
}

}  // namespace

TEST_SUITE("space") {

TEST_CASE("basis sizes and unisolvence") {
  CHECK(make_scalar_basis(1).size == 3);
  CHECK(make_scalar_basis(3).size == 10);
  for (int k : {1, 3}) {
    const ScalarBasis basis = make_scalar_basis(k);
    // Vandermonde at a unisolvent lattice must be far from singular.
    std::vector<Eigen::Vector2d> pts;
    for (int i = 0; i <= k; ++i)
      for (int j = 0; i + j <= k; ++j)
        pts.emplace_back(double(i) / std::max(k, 1), double(j) / std::max(k, 1));
    Eigen::MatrixXd vand(basis.size, basis.size);
    for (int p = 0; p < basis.size; ++p) vand.row(p) = basis.eval(pts[p]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(vand);
    CHECK(lu.isInvertible());
  }
  CHECK_THROWS_AS(make_scalar_basis(11), std::invalid_argument);
  CHECK_THROWS_AS(make_scalar_basis(-1), std::invalid_argument);
}

TEST_CASE("gradients match finite differences") {
  const ScalarBasis basis = make_scalar_basis(2);
  const double step = 1e-6;
  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;
  for (const Eigen::Vector2d& p : interior_points(5, 20240401u)) {
    basis.eval(p, vals, grads);
    const Eigen::VectorXd fx =
        (basis.eval(p + Eigen::Vector2d(step, 0)) - basis.eval(p - Eigen::Vector2d(step, 0))) /
        (2 * step);
    const Eigen::VectorXd fy =
        (basis.eval(p + Eigen::Vector2d(0, step)) - basis.eval(p - Eigen::Vector2d(0, step))) /
        (2 * step);
    CHECK((grads.col(0) - fx).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK((grads.col(1) - fy).cwiseAbs().maxCoeff() <= 1e-7);
  }
}

TEST_CASE("basis is orthonormal on the reference triangle") {
  for (int k : {1, 2, 4, 6}) {
    const ScalarBasis basis = make_scalar_basis(k);
    const QuadratureRule rule = make_quadrature(QuadDomain::Triangle, 2 * k);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(basis.size, basis.size);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::VectorXd v = basis.eval(rule.points.row(q));
      gram += rule.weights[q] * v * v.transpose();
    }
    CHECK((gram - Eigen::MatrixXd::Identity(basis.size, basis.size)).cwiseAbs().maxCoeff() <=
          1e-13);
  }
}

TEST_CASE("graded ordering nests lower degrees") {
  const ScalarBasis b2 = make_scalar_basis(2), b3 = make_scalar_basis(3);
  const Eigen::Vector2d p(0.31, 0.22);
  const Eigen::VectorXd v2 = b2.eval(p), v3 = b3.eval(p);
  CHECK((v3.head(b2.size) - v2).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("triangle quadrature examples") {
  const QuadratureRule mid = make_quadrature(QuadDomain::Triangle, 1);
  double sum = 0.0;
  for (int q = 0; q < mid.size(); ++q)
    sum += mid.weights[q] * (mid.points(q, 0) + mid.points(q, 1));
  CHECK(sum == doctest::Approx(1.0 / 3).epsilon(1e-14));

  const QuadratureRule rule = make_quadrature(QuadDomain::Triangle, 6);
  double v = 0.0;
  for (int q = 0; q < rule.size(); ++q)
    v += rule.weights[q] * std::pow(rule.points(q, 0), 4) * std::pow(rule.points(q, 1), 2);
  CHECK(v == doctest::Approx(monomial_integral(4, 2)).epsilon(1e-13));
}

TEST_CASE("edge quadrature examples") {
  const QuadratureRule rule = make_quadrature(QuadDomain::Edge, 3);
  CHECK(rule.size() == 2);
  double v = 0.0;
  for (int q = 0; q < rule.size(); ++q) v += rule.weights[q] * std::pow(rule.points(q, 0), 3);
  CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("quadrature exactness over all monomials") {
  for (int deg : {2, 5, 9, 14, 25}) {
    const QuadratureRule tri = make_quadrature(QuadDomain::Triangle, deg);
    CHECK(tri.weights.minCoeff() > 0.0);
    for (int a = 0; a + 0 <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b) {
        double v = 0.0;
        for (int q = 0; q < tri.size(); ++q)
          v += tri.weights[q] * std::pow(tri.points(q, 0), a) * std::pow(tri.points(q, 1), b);
        CHECK(std::abs(v - monomial_integral(a, b)) <= 1e-14 * std::abs(monomial_integral(0, 0)));
      }
    const QuadratureRule edge = make_quadrature(QuadDomain::Edge, deg);
    CHECK(edge.size() == (deg + 2) / 2);
    for (int a = 0; a <= deg; ++a) {
      double v = 0.0;
      for (int q = 0; q < edge.size(); ++q) v += edge.weights[q] * std::pow(edge.points(q, 0), a);
      CHECK(std::abs(v - 1.0 / (a + 1)) <= 1e-14);
    }
  }
  CHECK_THROWS_AS(make_quadrature(QuadDomain::Triangle, 26), std::invalid_argument);
  CHECK_THROWS_AS(make_quadrature(QuadDomain::Edge, -1), std::invalid_argument);
}

TEST_CASE("space dimensions") {
  const Mesh m8 = build_uniform_mesh(8, BoundaryPartition::single(Side::Bottom));
  const DGSpacePair s8 = build_spaces(m8, 3);
  CHECK(s8.dim_stress == 5120);
  CHECK(s8.dim_rotation == 768);

  const Mesh m2 = build_uniform_mesh(2, BoundaryPartition::single(Side::Bottom));
  const DGSpacePair s2 = build_spaces(m2, 1);
  CHECK(s2.dim_stress == 96);
  CHECK(s2.dim_rotation == 8);

  const DGSpacePair s4 = build_spaces(m2, 4);
  CHECK(s4.dim == 4L * 8 * 15 + 8L * 10);

  CHECK_THROWS_AS(build_spaces(m2, 0), std::invalid_argument);
}

TEST_CASE("dof indices are disjoint across elements and blocks") {
  const Mesh m = build_uniform_mesh(2, BoundaryPartition::single(Side::Bottom));
  const DGSpacePair s = build_spaces(m, 2);
  std::vector<char> seen(s.dim, 0);
  for (int e = 0; e < s.num_elements; ++e) {
    for (int c = 0; c < 4; ++c)
      for (int i = 0; i < s.stress_basis.size; ++i) seen[s.stress_index(e, c, i)]++;
    for (int j = 0; j < s.rotation_basis.size; ++j) seen[s.rotation_index(e, j)]++;
  }
  for (long i = 0; i < s.dim; ++i) CHECK(seen[i] == 1);
}

}  // TEST_SUITE
