#include "dgeig/mesh.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dgeig {

const char* to_string(Side s) {
  switch (s) {
    case Side::Bottom: return "bottom";
    case Side::Right: return "right";
    case Side::Top: return "top";
    case Side::Left: return "left";
  }
  return "?";
}

BoundaryPartition BoundaryPartition::single(Side s) {
  BoundaryPartition p;
  p.dirichlet[static_cast<int>(s)] = true;
  return p;
}

BoundaryPartition BoundaryPartition::all_dirichlet() {
  BoundaryPartition p;
  p.dirichlet = {true, true, true, true};
  return p;
}

BoundaryPartition BoundaryPartition::parse(const std::string& name) {
  if (name == "all-dirichlet") return all_dirichlet();
  for (int s = 0; s < 4; ++s)
    if (name == to_string(static_cast<Side>(s))) return single(static_cast<Side>(s));
  throw std::invalid_argument("bc: unknown boundary partition '" + name +
                              "' (expected bottom|right|top|left|all-dirichlet)");
}

std::string BoundaryPartition::name() const {
  int count = 0;
  for (bool d : dirichlet) count += d ? 1 : 0;
  if (count == 4) return "all-dirichlet";
  std::string out;
  for (int s = 0; s < 4; ++s) {
    if (!dirichlet[s]) continue;
    if (!out.empty()) out += "+";
    out += to_string(static_cast<Side>(s));
  }
  return out.empty() ? "none" : out;
}

void BoundaryPartition::validate() const {
  if (!(dirichlet[0] || dirichlet[1] || dirichlet[2] || dirichlet[3]))
    throw std::invalid_argument("bc: at least one side of the square must be Dirichlet");
}

Eigen::Matrix2d Mesh::jacobian(int e) const {
  const auto& t = triangles[e];
  Eigen::Matrix2d j;
  j.col(0) = vertices[t[1]] - vertices[t[0]];
  j.col(1) = vertices[t[2]] - vertices[t[0]];
  return j;
}

double Mesh::area(int e) const { return 0.5 * jacobian(e).determinant(); }

std::string Mesh::id() const { return "square-N" + std::to_string(n) + "-" + partition.name(); }

namespace {

Side side_of_boundary_face(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  constexpr double tol = 1e-12;
  if (std::abs(a.y()) < tol && std::abs(b.y()) < tol) return Side::Bottom;
  if (std::abs(a.x() - 1.0) < tol && std::abs(b.x() - 1.0) < tol) return Side::Right;
  if (std::abs(a.y() - 1.0) < tol && std::abs(b.y() - 1.0) < tol) return Side::Top;
  if (std::abs(a.x()) < tol && std::abs(b.x()) < tol) return Side::Left;
  throw std::logic_error("boundary face does not lie on a side of the unit square");
}

}  // namespace

Mesh build_uniform_mesh(int n, const BoundaryPartition& partition) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("N: refinement parameter must be even and >= 2, got " +
                                std::to_string(n));
  partition.validate();

  Mesh mesh;
  mesh.n = n;
  mesh.partition = partition;

  const int nv = n + 1;
  mesh.vertices.reserve(static_cast<size_t>(nv) * nv);
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nv; ++i)
      mesh.vertices.emplace_back(double(i) / n, double(j) / n);
  auto vid = [&](int i, int j) { return j * nv + i; };

  // Split each grid cell by the diagonal pointing toward the domain center:
  // slope +1 in the lower-left and upper-right quadrants, slope -1 otherwise.
  mesh.triangles.reserve(2ull * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      const bool slope_up = (i < n / 2) == (j < n / 2);
      if (slope_up) {
        mesh.triangles.push_back({a, b, c});
        mesh.triangles.push_back({a, c, d});
      } else {
        mesh.triangles.push_back({a, b, d});
        mesh.triangles.push_back({b, c, d});
      }
    }
  }

  // Face skeleton. First element to touch an edge becomes its left element;
  // faces are created in element order, so the numbering is deterministic.
  std::map<std::pair<int, int>, int> face_of_edge;
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const auto& t = mesh.triangles[e];
    for (int lf = 0; lf < 3; ++lf) {
      // local face lf is opposite vertex lf, traversed CCW
      const int va = t[(lf + 1) % 3], vb = t[(lf + 2) % 3];
      const auto key = std::minmax(va, vb);
      auto it = face_of_edge.find(key);
      if (it == face_of_edge.end()) {
        Face f;
        f.vertices = {va, vb};
        f.left = e;
        f.left_local = lf;
        const Eigen::Vector2d d = mesh.vertices[vb] - mesh.vertices[va];
        f.length = d.norm();
        f.normal = Eigen::Vector2d(d.y(), -d.x()) / f.length;
        face_of_edge.emplace(key, mesh.num_faces());
        mesh.faces.push_back(f);
      } else {
        Face& f = mesh.faces[it->second];
        f.right = e;
        f.right_local = lf;
      }
    }
  }

  for (Face& f : mesh.faces) {
    if (f.right >= 0) {
      f.label = FaceLabel::Interior;
      continue;
    }
    const Side s = side_of_boundary_face(mesh.vertices[f.vertices[0]], mesh.vertices[f.vertices[1]]);
    f.label = partition.is_dirichlet(s) ? FaceLabel::Dirichlet : FaceLabel::Neumann;
  }

  mesh.diameters.resize(mesh.triangles.size());
  mesh.h = 0.0;
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const auto& t = mesh.triangles[e];
    double d = 0.0;
    for (int i = 0; i < 3; ++i)
      d = std::max(d, (mesh.vertices[t[i]] - mesh.vertices[t[(i + 1) % 3]]).norm());
    mesh.diameters[e] = d;
    mesh.h = std::max(mesh.h, d);
  }
  return mesh;
}

FaceGeometry face_quadrature_geometry(const Mesh& mesh, int face_index) {
  if (face_index < 0 || face_index >= mesh.num_faces())
    throw std::out_of_range("face index " + std::to_string(face_index) + " out of range [0, " +
                            std::to_string(mesh.num_faces()) + ")");
  const Face& f = mesh.faces[face_index];
  return FaceGeometry{mesh.vertices[f.vertices[0]], mesh.vertices[f.vertices[1]], f.normal,
                      f.length};
}

}  // namespace dgeig
