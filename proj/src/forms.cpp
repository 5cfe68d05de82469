#include "dgeig/forms.hpp"

#include "dgeig/quadrature.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

namespace dgeig {

namespace {

using Triplet = Eigen::Triplet<double>;
using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Matrix2d unit_tensor(int component) {
  Eigen::Matrix2d t = Eigen::Matrix2d::Zero();
  t(component / 2, component % 2) = 1.0;
  return t;
}

// Compliance pairing of the four unit tensors; constant over the domain.
Eigen::Matrix4d compliance_component_matrix(const MaterialModel& material) {
  Eigen::Matrix4d c;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      c(a, b) = compliance_pairing(unit_tensor(a), unit_tensor(b), material);
  return c;
}

// Reference-element tables shared by all elements of an affine mesh.
struct ReferenceTables {
  QuadratureRule tri;
  Eigen::MatrixXd psi;       // nq x dk stress basis values
  Eigen::MatrixXd dpsi_x;    // nq x dk reference gradients
  Eigen::MatrixXd dpsi_y;
  Eigen::MatrixXd rot;       // nq x dkm1 rotation basis values
  Eigen::MatrixXd mass_ref;  // psi' W psi
  Eigen::MatrixXd cross_ref; // rot' W psi
};

ReferenceTables make_reference_tables(const DGSpacePair& spaces, int exactness) {
  ReferenceTables t;
  t.tri = make_quadrature(QuadDomain::Triangle, exactness);
  const int nq = t.tri.size();
  const int dk = spaces.stress_basis.size;
  const int dr = spaces.rotation_basis.size;
  t.psi.resize(nq, dk);
  t.dpsi_x.resize(nq, dk);
  t.dpsi_y.resize(nq, dk);
  t.rot.resize(nq, dr);
  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;
  for (int q = 0; q < nq; ++q) {
    const Eigen::Vector2d p = t.tri.points.row(q);
    spaces.stress_basis.eval(p, vals, grads);
    t.psi.row(q) = vals;
    t.dpsi_x.row(q) = grads.col(0);
    t.dpsi_y.row(q) = grads.col(1);
    t.rot.row(q) = spaces.rotation_basis.eval(p);
  }
  const Eigen::VectorXd& w = t.tri.weights;
  t.mass_ref = t.psi.transpose() * w.asDiagonal() * t.psi;
  t.cross_ref = t.rot.transpose() * w.asDiagonal() * t.psi;
  return t;
}

int resolve_exactness(int requested, int k) { return requested > 0 ? requested : 2 * k; }

// Volume contributions. Compliance + rotation coupling belong to the mass
// form B; the rho-weighted broken div-div term belongs to the DG stiffness.
void volume_triplets(const Mesh& mesh, const DGSpacePair& spaces, const MaterialModel& material,
                     const AssemblyOptions& opts, bool with_mass_form, bool with_div_div,
                     std::vector<Triplet>& out) {
  const int k = spaces.degree;
  const ReferenceTables tab = make_reference_tables(spaces, resolve_exactness(opts.volume_exactness, k));
  const int nq = tab.tri.size();
  const int dk = spaces.stress_basis.size;
  const int dr = spaces.rotation_basis.size;
  const Eigen::Matrix4d chat = compliance_component_matrix(material);
  const double inv_rho = 1.0 / material.rho;
  const Eigen::VectorXd& w = tab.tri.weights;

  Eigen::MatrixXd gx(nq, dk), gy(nq, dk), mxx, mxy, myy;
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const Eigen::Matrix2d jac = mesh.jacobian(e);
    const double det = jac.determinant();
    const Eigen::Matrix2d jinv = jac.inverse();

    if (with_mass_form) {
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          if (chat(a, b) == 0.0) continue;
          const double scale = chat(a, b) * det;
          for (int i = 0; i < dk; ++i)
            for (int j = 0; j < dk; ++j)
              out.emplace_back(spaces.stress_index(e, a, i), spaces.stress_index(e, b, j),
                               scale * tab.mass_ref(i, j));
        }
      // r = s J pairs with tau through J : tau = tau_xy - tau_yx.
      for (int j = 0; j < dr; ++j)
        for (int i = 0; i < dk; ++i) {
          const double v = det * tab.cross_ref(j, i);
          const long rj = spaces.rotation_index(e, j);
          const long sxy = spaces.stress_index(e, XY, i);
          const long syx = spaces.stress_index(e, YX, i);
          out.emplace_back(rj, sxy, v);
          out.emplace_back(sxy, rj, v);
          out.emplace_back(rj, syx, -v);
          out.emplace_back(syx, rj, -v);
        }
    }

    if (with_div_div) {
      // Physical gradients: grad_X psi = J^{-T} grad_xi psi.
      gx = jinv(0, 0) * tab.dpsi_x + jinv(1, 0) * tab.dpsi_y;
      gy = jinv(0, 1) * tab.dpsi_x + jinv(1, 1) * tab.dpsi_y;
      const Eigen::VectorXd ws = (inv_rho * det) * w;
      mxx = gx.transpose() * ws.asDiagonal() * gx;
      mxy = gx.transpose() * ws.asDiagonal() * gy;
      myy = gy.transpose() * ws.asDiagonal() * gy;
      // div(phi e_{(r,c)}) = d_c phi e_r: rows r pair components (r,x),(r,y).
      for (int r = 0; r < 2; ++r) {
        const int cx = 2 * r, cy = 2 * r + 1;
        for (int i = 0; i < dk; ++i)
          for (int j = 0; j < dk; ++j) {
            out.emplace_back(spaces.stress_index(e, cx, i), spaces.stress_index(e, cx, j), mxx(i, j));
            out.emplace_back(spaces.stress_index(e, cx, i), spaces.stress_index(e, cy, j), mxy(i, j));
            out.emplace_back(spaces.stress_index(e, cy, i), spaces.stress_index(e, cx, j), mxy(j, i));
            out.emplace_back(spaces.stress_index(e, cy, i), spaces.stress_index(e, cy, j), myy(i, j));
          }
      }
    }
  }
}

// Per-face dof bookkeeping: traces and physical divergence factors of the
// stress basis of each incident element at the face quadrature points.
struct FaceSide {
  int element = -1;
  Eigen::Vector2d normal;
  double avg_weight = 1.0;
  Eigen::MatrixXd trace;  // nq x dk
  Eigen::MatrixXd dx, dy; // nq x dk physical gradients
};

void face_triplets(const Mesh& mesh, const DGSpacePair& spaces, const MaterialModel& material,
                   const AssemblyOptions& opts, double penalty_a_s, bool with_consistency,
                   std::vector<Triplet>& out) {
  const int k = spaces.degree;
  const QuadratureRule rule =
      make_quadrature(QuadDomain::Edge, resolve_exactness(opts.edge_exactness, k));
  const int nq = rule.size();
  const int dk = spaces.stress_basis.size;
  const double inv_rho = 1.0 / material.rho;

  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;

  for (int fi = 0; fi < mesh.num_faces(); ++fi) {
    const Face& face = mesh.faces[fi];
    if (face.label == FaceLabel::Dirichlet) continue;
    const bool interior = face.label == FaceLabel::Interior;

    const Eigen::Vector2d p0 = mesh.vertices[face.vertices[0]];
    const Eigen::Vector2d p1 = mesh.vertices[face.vertices[1]];
    const double len = face.length;

    std::vector<FaceSide> sides;
    sides.reserve(2);
    sides.push_back({face.left, face.normal, interior ? 0.5 : 1.0, {}, {}, {}});
    if (interior) sides.push_back({face.right, -face.normal, 0.5, {}, {}, {}});

    for (FaceSide& s : sides) {
      const Eigen::Matrix2d jinv = mesh.jacobian(s.element).inverse();
      const Eigen::Vector2d v0 = mesh.vertex0(s.element);
      s.trace.resize(nq, dk);
      s.dx.resize(nq, dk);
      s.dy.resize(nq, dk);
      for (int q = 0; q < nq; ++q) {
        const Eigen::Vector2d xq = p0 + rule.points(q, 0) * (p1 - p0);
        const Eigen::Vector2d xi = jinv * (xq - v0);
        spaces.stress_basis.eval(xi, vals, grads);
        s.trace.row(q) = vals;
        s.dx.row(q) = jinv(0, 0) * grads.col(0) + jinv(1, 0) * grads.col(1);
        s.dy.row(q) = jinv(0, 1) * grads.col(0) + jinv(1, 1) * grads.col(1);
      }
    }

    // Edge weights sum to one, so int_F f = len * sum_q w_q f(x_q).
    for (size_t sa = 0; sa < sides.size(); ++sa) {
      for (size_t sb = 0; sb < sides.size(); ++sb) {
        const FaceSide& a = sides[sa];
        const FaceSide& b = sides[sb];
        const Eigen::MatrixXd tt = a.trace.transpose() * rule.weights.asDiagonal() * b.trace;
        for (int r = 0; r < 2; ++r) {
          for (int ca = 0; ca < 2; ++ca) {
            for (int cb = 0; cb < 2; ++cb) {
              if (penalty_a_s != 0.0) {
                // a_s h_F^{-1} int_F [sigma].[tau]: the h_F^{-1} cancels the
                // face length of the integral.
                const double scale = penalty_a_s * a.normal[ca] * b.normal[cb];
                if (scale != 0.0)
                  for (int i = 0; i < dk; ++i)
                    for (int j = 0; j < dk; ++j)
                      out.emplace_back(spaces.stress_index(a.element, 2 * r + ca, i),
                                       spaces.stress_index(b.element, 2 * r + cb, j),
                                       scale * tt(i, j));
              }
              if (with_consistency) {
                // -({rho^-1 div sigma}.[tau] + {rho^-1 div tau}.[sigma])
                const double jn = b.normal[cb];
                if (jn == 0.0) continue;
                const Eigen::MatrixXd& da = ca == 0 ? a.dx : a.dy;
                const Eigen::MatrixXd dt =
                    da.transpose() * rule.weights.asDiagonal() * b.trace;
                const double scale = -inv_rho * len * a.avg_weight * jn;
                for (int i = 0; i < dk; ++i)
                  for (int j = 0; j < dk; ++j) {
                    const double v = scale * dt(i, j);
                    const long ia = spaces.stress_index(a.element, 2 * r + ca, i);
                    const long jb = spaces.stress_index(b.element, 2 * r + cb, j);
                    out.emplace_back(ia, jb, v);
                    out.emplace_back(jb, ia, v);
                  }
              }
            }
          }
        }
      }
    }
  }
}

SparseMatrix from_triplets(long dim, std::vector<Triplet>& trip) {
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

void check_spaces(const Mesh& mesh, const DGSpacePair& spaces) {
  if (spaces.num_elements != mesh.num_triangles())
    throw std::invalid_argument("spaces were built on a different mesh (element count mismatch)");
}

}  // namespace

SparseMatrix assemble_B(const Mesh& mesh, const DGSpacePair& spaces, const MaterialModel& material,
                        const AssemblyOptions& opts) {
  check_spaces(mesh, spaces);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<size_t>(mesh.num_triangles()) *
               (6u * spaces.stress_basis.size * spaces.stress_basis.size +
                4u * spaces.rotation_basis.size * spaces.stress_basis.size));
  volume_triplets(mesh, spaces, material, opts, true, false, trip);
  return from_triplets(spaces.dim, trip);
}

namespace {

// Stress-block DG terms: div-div + penalty - consistency. A_h = B + this.
SparseMatrix assemble_stress_dg(const Mesh& mesh, const DGSpacePair& spaces,
                                const MaterialModel& material, double a_s,
                                const AssemblyOptions& opts) {
  std::vector<Triplet> trip;
  const size_t dk = spaces.stress_basis.size;
  trip.reserve(static_cast<size_t>(mesh.num_triangles()) * 8u * dk * dk +
               static_cast<size_t>(mesh.num_faces()) * 24u * dk * dk);
  volume_triplets(mesh, spaces, material, opts, false, true, trip);
  face_triplets(mesh, spaces, material, opts, a_s, true, trip);
  return from_triplets(spaces.dim, trip);
}

}  // namespace

SparseMatrix assemble_Ah(const Mesh& mesh, const DGSpacePair& spaces,
                         const MaterialModel& material, double a_s, const AssemblyOptions& opts) {
  check_spaces(mesh, spaces);
  if (!(a_s > 0.0)) throw std::invalid_argument("aS: stabilization parameter must be positive");
  SparseMatrix a = assemble_B(mesh, spaces, material, opts);
  a += assemble_stress_dg(mesh, spaces, material, a_s, opts);
  return a;
}

AssembledPencil assemble_pencil(const Mesh& mesh, const DGSpacePair& spaces,
                                const MaterialModel& material, double a_s,
                                const AssemblyOptions& opts) {
  check_spaces(mesh, spaces);
  if (!(a_s > 0.0)) throw std::invalid_argument("aS: stabilization parameter must be positive");
  AssembledPencil p;
  p.B = assemble_B(mesh, spaces, material, opts);
  p.A = p.B + assemble_stress_dg(mesh, spaces, material, a_s, opts);
  p.dim = spaces.dim;
  p.a_s = a_s;
  p.degree = spaces.degree;
  p.material = material;
  p.mesh_id = mesh.id();
  p.spaces = spaces;
  return p;
}

SparseMatrix assemble_volume(const Mesh& mesh, const DGSpacePair& spaces,
                             const MaterialModel& material, const AssemblyOptions& opts) {
  check_spaces(mesh, spaces);
  std::vector<Triplet> trip;
  volume_triplets(mesh, spaces, material, opts, true, true, trip);
  return from_triplets(spaces.dim, trip);
}

SparseMatrix assemble_jump_penalty(const Mesh& mesh, const DGSpacePair& spaces,
                                   const AssemblyOptions& opts) {
  check_spaces(mesh, spaces);
  std::vector<Triplet> trip;
  MaterialModel dummy;
  dummy.rho = 1.0;
  face_triplets(mesh, spaces, dummy, opts, 1.0, false, trip);
  return from_triplets(spaces.dim, trip);
}

SparseMatrix assemble_face_avg_div(const Mesh& mesh, const DGSpacePair& spaces,
                                   const AssemblyOptions& opts) {
  check_spaces(mesh, spaces);
  const int k = spaces.degree;
  const QuadratureRule rule =
      make_quadrature(QuadDomain::Edge, resolve_exactness(opts.edge_exactness, k));
  const int nq = rule.size();
  const int dk = spaces.stress_basis.size;
  std::vector<Triplet> trip;
  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;

  for (int fi = 0; fi < mesh.num_faces(); ++fi) {
    const Face& face = mesh.faces[fi];
    if (face.label == FaceLabel::Dirichlet) continue;
    const bool interior = face.label == FaceLabel::Interior;
    const Eigen::Vector2d p0 = mesh.vertices[face.vertices[0]];
    const Eigen::Vector2d p1 = mesh.vertices[face.vertices[1]];
    const double len = face.length;
    std::vector<FaceSide> sides;
    sides.push_back({face.left, face.normal, interior ? 0.5 : 1.0, {}, {}, {}});
    if (interior) sides.push_back({face.right, -face.normal, 0.5, {}, {}, {}});
    for (FaceSide& s : sides) {
      const Eigen::Matrix2d jinv = mesh.jacobian(s.element).inverse();
      const Eigen::Vector2d v0 = mesh.vertex0(s.element);
      s.dx.resize(nq, dk);
      s.dy.resize(nq, dk);
      for (int q = 0; q < nq; ++q) {
        const Eigen::Vector2d xq = p0 + rule.points(q, 0) * (p1 - p0);
        spaces.stress_basis.eval(jinv * (xq - v0), vals, grads);
        s.dx.row(q) = jinv(0, 0) * grads.col(0) + jinv(1, 0) * grads.col(1);
        s.dy.row(q) = jinv(0, 1) * grads.col(0) + jinv(1, 1) * grads.col(1);
      }
    }
    // h_F int_F {div sigma}.{div tau} = len^2 sum_q w_q {..}{..}
    for (const FaceSide& a : sides)
      for (const FaceSide& b : sides) {
        const double scale = len * len * a.avg_weight * b.avg_weight;
        for (int r = 0; r < 2; ++r)
          for (int ca = 0; ca < 2; ++ca)
            for (int cb = 0; cb < 2; ++cb) {
              const Eigen::MatrixXd& da = ca == 0 ? a.dx : a.dy;
              const Eigen::MatrixXd& db = cb == 0 ? b.dx : b.dy;
              const Eigen::MatrixXd dd = da.transpose() * rule.weights.asDiagonal() * db;
              for (int i = 0; i < dk; ++i)
                for (int j = 0; j < dk; ++j)
                  trip.emplace_back(spaces.stress_index(a.element, 2 * r + ca, i),
                                    spaces.stress_index(b.element, 2 * r + cb, j),
                                    scale * dd(i, j));
            }
      }
  }
  return from_triplets(spaces.dim, trip);
}

SparseMatrix assemble_l2_mass(const Mesh& mesh, const DGSpacePair& spaces) {
  check_spaces(mesh, spaces);
  const ReferenceTables tab = make_reference_tables(spaces, 2 * spaces.degree);
  const int dk = spaces.stress_basis.size;
  const int dr = spaces.rotation_basis.size;
  const Eigen::MatrixXd rot_mass =
      tab.rot.transpose() * tab.tri.weights.asDiagonal() * tab.rot;
  std::vector<Triplet> trip;
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const double det = mesh.jacobian(e).determinant();
    for (int c = 0; c < 4; ++c)
      for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j)
          trip.emplace_back(spaces.stress_index(e, c, i), spaces.stress_index(e, c, j),
                            det * tab.mass_ref(i, j));
    for (int i = 0; i < dr; ++i)
      for (int j = 0; j < dr; ++j)
        trip.emplace_back(spaces.rotation_index(e, i), spaces.rotation_index(e, j),
                          2.0 * det * rot_mass(i, j));
  }
  return from_triplets(spaces.dim, trip);
}

Eigen::MatrixXd assemble_conforming_A(const Mesh& mesh, const DGSpacePair& spaces,
                                      const MaterialModel& material,
                                      const std::vector<Eigen::VectorXd>& fields) {
  check_spaces(mesh, spaces);
  const SparseMatrix penalty = assemble_jump_penalty(mesh, spaces);
  const SparseMatrix volume = assemble_volume(mesh, spaces, material);
  for (size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].size() != spaces.dim)
      throw std::invalid_argument("conforming form: field dimension mismatch");
    // The squared jump seminorm of an exactly conforming field only carries
    // assembly roundoff; anything above 1e-12 relative to |x|^2 is a real jump.
    const double jump_sq = std::max(0.0, fields[i].dot(penalty * fields[i]));
    if (jump_sq > 1e-12 * std::max(1.0, fields[i].squaredNorm()))
      throw std::invalid_argument("conforming form: field " + std::to_string(i) +
                                  " has nonzero normal jumps on the active skeleton (squared "
                                  "seminorm " +
                                  std::to_string(jump_sq) + ")");
  }
  Eigen::MatrixXd gram(fields.size(), fields.size());
  for (size_t i = 0; i < fields.size(); ++i) {
    const Eigen::VectorXd vi = volume * fields[i];
    for (size_t j = 0; j < fields.size(); ++j) gram(i, j) = fields[j].dot(vi);
  }
  return gram;
}

DgNormOperators make_dg_norm_operators(const Mesh& mesh, const DGSpacePair& spaces,
                                       const MaterialModel& material) {
  DgNormOperators ops;
  std::vector<Triplet> trip;
  volume_triplets(mesh, spaces, material, {}, false, true, trip);
  ops.div_div = from_triplets(spaces.dim, trip);
  ops.jump_penalty = assemble_jump_penalty(mesh, spaces);
  ops.face_avg_div = assemble_face_avg_div(mesh, spaces);
  ops.l2_mass = assemble_l2_mass(mesh, spaces);
  return ops;
}

double dg_seminorm(const DgNormOperators& ops, const Eigen::VectorXd& x) {
  return std::sqrt(std::max(0.0, x.dot(ops.div_div * x) + x.dot(ops.jump_penalty * x)));
}

double dg_norm(const DgNormOperators& ops, const Eigen::VectorXd& x) {
  const double s = dg_seminorm(ops, x);
  return std::sqrt(s * s + std::max(0.0, x.dot(ops.l2_mass * x)));
}

double dg_star_norm(const DgNormOperators& ops, const Eigen::VectorXd& x) {
  const double s = dg_norm(ops, x);
  return std::sqrt(s * s + std::max(0.0, x.dot(ops.face_avg_div * x)));
}

}  // namespace dgeig
