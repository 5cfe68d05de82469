#pragma once

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace dgeig {

enum class FaceLabel { Interior, Dirichlet, Neumann };

enum class Side : int { Bottom = 0, Right = 1, Top = 2, Left = 3 };

const char* to_string(Side s);

// Assignment of the four sides of the unit square to Dirichlet (fixed) or
// Neumann (traction-free) conditions. At least one side must be Dirichlet.
struct BoundaryPartition {
  std::array<bool, 4> dirichlet{false, false, false, false};

  static BoundaryPartition single(Side s);
  static BoundaryPartition all_dirichlet();
  // Accepts "bottom", "right", "top", "left" or "all-dirichlet".
  static BoundaryPartition parse(const std::string& name);

  bool is_dirichlet(Side s) const { return dirichlet[static_cast<int>(s)]; }
  std::string name() const;
  void validate() const;
};

struct Face {
  // Endpoints ordered so that the face is traversed CCW as seen from the
  // left element; the stored normal then points out of the left element.
  std::array<int, 2> vertices{-1, -1};
  int left = -1;
  int left_local = -1;
  int right = -1;  // -1 on boundary faces
  int right_local = -1;
  FaceLabel label = FaceLabel::Interior;
  Eigen::Vector2d normal = Eigen::Vector2d::Zero();
  double length = 0.0;
};

// Triangulation of the unit square with full face skeleton. Immutable after
// construction; safe to share across threads.
struct Mesh {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> triangles;  // CCW vertex indices
  std::vector<Face> faces;
  std::vector<double> diameters;  // h_K per triangle
  double h = 0.0;                 // max h_K
  int n = 0;                      // refinement parameter (elements per edge)
  BoundaryPartition partition;

  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }

  const Eigen::Vector2d& vertex0(int e) const { return vertices[triangles[e][0]]; }
  // Affine map X = v0 + J * xi from the reference triangle {x,y>=0, x+y<=1}.
  Eigen::Matrix2d jacobian(int e) const;
  double area(int e) const;  // signed; positive for CCW triangles

  std::string id() const;
};

// Structured symmetric triangulation: n x n grid of squares, each split by
// one diagonal, diagonal directions mirrored across both midlines so that the
// triangle set is invariant under x -> 1-x and y -> 1-y. Requires n even,
// n >= 2, so the mirroring pairs whole cells.
Mesh build_uniform_mesh(int n, const BoundaryPartition& partition);

struct FaceGeometry {
  Eigen::Vector2d p0, p1;
  Eigen::Vector2d normal;  // unit, out of the left element
  double length = 0.0;
};

FaceGeometry face_quadrature_geometry(const Mesh& mesh, int face_index);

}  // namespace dgeig
