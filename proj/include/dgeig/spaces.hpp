#pragma once

#include "dgeig/basis.hpp"
#include "dgeig/mesh.hpp"

namespace dgeig {

// Tensor components of the stress space, row-major.
enum TensorComponent : int { XX = 0, XY = 1, YX = 2, YY = 3 };

// Discontinuous spaces over a mesh: degree-k tensor-valued stress space
// (4 components per scalar function per element) and the degree-(k-1) scalar
// space carrying rotations r = s * J, J = [[0,1],[-1,0]], which realizes the
// skew-symmetric constraint structurally. Global indices are stress dofs
// first, rotation dofs after.
struct DGSpacePair {
  int degree = 1;
  int num_elements = 0;
  ScalarBasis stress_basis;    // P_k
  ScalarBasis rotation_basis;  // P_{k-1}
  long dim_stress = 0;         // 4 * T * dim P_k
  long dim_rotation = 0;       // T * dim P_{k-1}
  long dim = 0;

  long stress_index(int element, int component, int i) const {
    return (static_cast<long>(element) * 4 + component) * stress_basis.size + i;
  }
  long rotation_index(int element, int j) const {
    return dim_stress + static_cast<long>(element) * rotation_basis.size + j;
  }
};

DGSpacePair build_spaces(const Mesh& mesh, int k);

}  // namespace dgeig
