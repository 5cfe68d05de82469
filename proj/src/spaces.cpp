#include "dgeig/spaces.hpp"

#include <stdexcept>

namespace dgeig {

DGSpacePair build_spaces(const Mesh& mesh, int k) {
  if (k < 1)
    throw std::invalid_argument("k: polynomial degree must be >= 1, got " + std::to_string(k));
  DGSpacePair s;
  s.degree = k;
  s.num_elements = mesh.num_triangles();
  s.stress_basis = make_scalar_basis(k);
  s.rotation_basis = make_scalar_basis(k - 1);
  s.dim_stress = 4L * s.num_elements * s.stress_basis.size;
  s.dim_rotation = static_cast<long>(s.num_elements) * s.rotation_basis.size;
  s.dim = s.dim_stress + s.dim_rotation;
  return s;
}

}  // namespace dgeig
