#include "dgeig/mesh.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

using namespace dgeig;

namespace {

int count_label(const Mesh& m, FaceLabel l) {
  return static_cast<int>(
      std::count_if(m.faces.begin(), m.faces.end(), [l](const Face& f) { return f.label == l; }));
}

// Canonical key of a triangle as a sorted set of vertex coordinates.
std::multiset<std::pair<long, long>> triangle_key(const Mesh& m, int e, bool reflect_x,
                                                  bool reflect_y) {
  std::multiset<std::pair<long, long>> key;
  for (int v : m.triangles[e]) {
    double x = m.vertices[v].x(), y = m.vertices[v].y();
    if (reflect_x) x = 1.0 - x;
    if (reflect_y) y = 1.0 - y;
    key.insert({std::lround(x * 2 * m.n * 1000), std::lround(y * 2 * m.n * 1000)});
  }
  return key;
}

bool reflection_invariant(const Mesh& m, bool rx, bool ry) {
  std::set<std::multiset<std::pair<long, long>>> plain, mapped;
  for (int e = 0; e < m.num_triangles(); ++e) {
    plain.insert(triangle_key(m, e, false, false));
    mapped.insert(triangle_key(m, e, rx, ry));
  }
  return plain == mapped;
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("N=2 bottom-Dirichlet counts") {
  const Mesh m = build_uniform_mesh(2, BoundaryPartition::single(Side::Bottom));
  CHECK(m.num_triangles() == 8);
  CHECK(m.num_vertices() == 9);
  CHECK(m.num_faces() == 16);
  CHECK(count_label(m, FaceLabel::Dirichlet) == 2);
  CHECK(count_label(m, FaceLabel::Neumann) == 6);
  CHECK(count_label(m, FaceLabel::Interior) == 8);
}

TEST_CASE("reflection symmetry") {
  for (int n : {2, 4, 6}) {
    const Mesh m = build_uniform_mesh(n, BoundaryPartition::single(Side::Bottom));
    CHECK(m.num_triangles() == 2 * n * n);
    CHECK(reflection_invariant(m, true, false));
    CHECK(reflection_invariant(m, false, true));
  }
}

TEST_CASE("face lengths at N=8") {
  const Mesh m = build_uniform_mesh(8, BoundaryPartition::single(Side::Bottom));
  for (const Face& f : m.faces) {
    const Eigen::Vector2d d = m.vertices[f.vertices[1]] - m.vertices[f.vertices[0]];
    CHECK(std::abs(f.length - d.norm()) <= 1e-15);
    const bool axis = std::abs(d.x()) < 1e-14 || std::abs(d.y()) < 1e-14;
    CHECK(f.length == doctest::Approx(axis ? 1.0 / 8 : std::sqrt(2.0) / 8).epsilon(1e-13));
  }
}

TEST_CASE("geometric invariants") {
  for (int n : {2, 4, 8, 16}) {
    const Mesh m = build_uniform_mesh(n, BoundaryPartition::single(Side::Left));
    double total_area = 0.0;
    for (int e = 0; e < m.num_triangles(); ++e) {
      CHECK(m.area(e) > 0.0);
      total_area += m.area(e);
    }
    CHECK(std::abs(total_area - 1.0) <= 1e-13);
    // Euler relation on the simply connected square
    CHECK(m.num_vertices() - m.num_faces() + m.num_triangles() == 1);
    int boundary = 0;
    for (const Face& f : m.faces) {
      CHECK(std::abs(f.normal.norm() - 1.0) <= 1e-14);
      if (f.label == FaceLabel::Interior) {
        CHECK(f.right >= 0);
      } else {
        CHECK(f.right == -1);
        ++boundary;
      }
    }
    CHECK(boundary == 4 * n);
    CHECK(count_label(m, FaceLabel::Dirichlet) == n);  // single Dirichlet side
  }
}

TEST_CASE("normals point out of the left element and into the right") {
  const Mesh m = build_uniform_mesh(4, BoundaryPartition::single(Side::Bottom));
  for (const Face& f : m.faces) {
    const Eigen::Vector2d mid =
        0.5 * (m.vertices[f.vertices[0]] + m.vertices[f.vertices[1]]);
    const auto centroid = [&](int e) {
      return ((m.vertices[m.triangles[e][0]] + m.vertices[m.triangles[e][1]] +
               m.vertices[m.triangles[e][2]]) /
              3.0)
          .eval();
    };
    CHECK((mid - centroid(f.left)).dot(f.normal) > 0.0);
    if (f.right >= 0) CHECK((mid - centroid(f.right)).dot(-f.normal) > 0.0);
  }
}

TEST_CASE("face_quadrature_geometry") {
  const Mesh m = build_uniform_mesh(2, BoundaryPartition::single(Side::Bottom));
  bool saw_bottom = false, saw_diagonal = false;
  for (int fi = 0; fi < m.num_faces(); ++fi) {
    const FaceGeometry g = face_quadrature_geometry(m, fi);
    CHECK(std::abs(g.length - (g.p1 - g.p0).norm()) <= 1e-15);
    if (m.faces[fi].label != FaceLabel::Interior && std::abs(g.p0.y()) < 1e-14 &&
        std::abs(g.p1.y()) < 1e-14) {
      saw_bottom = true;
      CHECK(g.normal.x() == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(g.normal.y() == doctest::Approx(-1.0).epsilon(1e-14));
    }
    if (std::abs(std::abs(g.p1.x() - g.p0.x()) - 0.5) < 1e-14 &&
        std::abs(std::abs(g.p1.y() - g.p0.y()) - 0.5) < 1e-14) {
      saw_diagonal = true;
      CHECK(g.length == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    }
  }
  CHECK(saw_bottom);
  CHECK(saw_diagonal);
  CHECK_THROWS_AS(face_quadrature_geometry(m, -1), std::out_of_range);
  CHECK_THROWS_AS(face_quadrature_geometry(m, m.num_faces()), std::out_of_range);
}

TEST_CASE("rejects bad refinement and partitions") {
  CHECK_THROWS_AS(build_uniform_mesh(0, BoundaryPartition::single(Side::Bottom)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_mesh(3, BoundaryPartition::single(Side::Bottom)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_mesh(4, BoundaryPartition{}), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryPartition::parse("north"), std::invalid_argument);
  CHECK(BoundaryPartition::parse("all-dirichlet").is_dirichlet(Side::Top));
  CHECK(BoundaryPartition::parse("left").name() == "left");
}

}  // TEST_SUITE
