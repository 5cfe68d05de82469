#pragma once

#include "dgeig/material.hpp"
#include "dgeig/spaces.hpp"

#include <Eigen/SparseCore>

#include <string>
#include <vector>

namespace dgeig {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct AssemblyOptions {
  // 0 selects the automatic algebraic exactness 2k; all integrands of the
  // forms have degree <= 2k on affine elements, so raising it cannot change
  // the matrices beyond roundoff.
  int volume_exactness = 0;
  int edge_exactness = 0;
};

// Mixed mass form: block structure [[M_C, D^T], [D, 0]] with M_C the
// compliance mass matrix and D the rotation/stress coupling. The
// rotation-rotation block is identically zero.
SparseMatrix assemble_B(const Mesh& mesh, const DGSpacePair& spaces, const MaterialModel& material,
                        const AssemblyOptions& opts = {});

// Interior-penalty DG stiffness form: B plus, on the stress block, the broken
// div-div term, the penalty a_s h_F^{-1} [sigma].[tau] and the symmetric
// consistency terms -({div sigma}.[tau] + {div tau}.[sigma]), with face sums
// running over interior and Neumann faces only. Dirichlet faces carry no
// face terms.
SparseMatrix assemble_Ah(const Mesh& mesh, const DGSpacePair& spaces,
                         const MaterialModel& material, double a_s,
                         const AssemblyOptions& opts = {});

struct AssembledPencil {
  SparseMatrix A, B;
  long dim = 0;
  double a_s = 0.0;
  int degree = 0;
  MaterialModel material;
  std::string mesh_id;
  DGSpacePair spaces;  // dof layout the matrices were assembled against
};

AssembledPencil assemble_pencil(const Mesh& mesh, const DGSpacePair& spaces,
                                const MaterialModel& material, double a_s,
                                const AssemblyOptions& opts = {});

// Volume-only part of the stiffness form (compliance + coupling + div-div);
// on fields with zero normal jumps over the active skeleton this is the
// conforming bilinear form.
SparseMatrix assemble_volume(const Mesh& mesh, const DGSpacePair& spaces,
                             const MaterialModel& material, const AssemblyOptions& opts = {});

// Quadratic form sum_F h_F^{-1} int_F |[sigma]|^2 over interior + Neumann
// faces (stress block only).
SparseMatrix assemble_jump_penalty(const Mesh& mesh, const DGSpacePair& spaces,
                                   const AssemblyOptions& opts = {});

// Quadratic form sum_F h_F int_F |{div sigma}|^2 over interior + Neumann
// faces; diagnostic ingredient of the starred DG norm.
SparseMatrix assemble_face_avg_div(const Mesh& mesh, const DGSpacePair& spaces,
                                   const AssemblyOptions& opts = {});

// Plain L2 mass of the pair (stress block, rotation block); the rotation
// block carries the factor 2 from |s J|^2 = 2 s^2.
SparseMatrix assemble_l2_mass(const Mesh& mesh, const DGSpacePair& spaces);

// Gram matrix of the conforming form on the span of the given coefficient
// vectors. Rejects fields whose jump seminorm over the active skeleton
// exceeds 1e-12 relative to their Euclidean norm.
Eigen::MatrixXd assemble_conforming_A(const Mesh& mesh, const DGSpacePair& spaces,
                                      const MaterialModel& material,
                                      const std::vector<Eigen::VectorXd>& fields);

// Diagnostic DG norms on coefficient vectors of the pair space.
struct DgNormOperators {
  SparseMatrix div_div;  // rho-weighted broken div-div
  SparseMatrix jump_penalty;
  SparseMatrix face_avg_div;
  SparseMatrix l2_mass;
};
DgNormOperators make_dg_norm_operators(const Mesh& mesh, const DGSpacePair& spaces,
                                       const MaterialModel& material);
double dg_seminorm(const DgNormOperators& ops, const Eigen::VectorXd& x);
double dg_norm(const DgNormOperators& ops, const Eigen::VectorXd& x);
double dg_star_norm(const DgNormOperators& ops, const Eigen::VectorXd& x);

}  // namespace dgeig
