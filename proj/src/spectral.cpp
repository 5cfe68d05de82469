#include "dgeig/spectral.hpp"

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dgeig {

const char* to_string(ModeClass c) {
  switch (c) {
    case ModeClass::Kernel: return "kernel";
    case ModeClass::Physical: return "physical";
    case ModeClass::TraceNull: return "trace-null";
    case ModeClass::Unresolved: return "unresolved";
  }
  return "?";
}

long ModeSet::count(ModeClass c) const {
  return std::count_if(modes.begin(), modes.end(), [c](const Mode& m) { return m.cls == c; });
}

std::vector<double> ModeSet::physical_omegas(int m) const {
  std::vector<double> out;
  for (const Mode& mode : modes) {
    if (mode.cls != ModeClass::Physical) continue;
    out.push_back(mode.omega);
    if (m >= 0 && static_cast<int>(out.size()) == m) break;
  }
  return out;
}

ModeSet classify_modes(const RawEigenpairs& raw, double kernel_tol, double positivity_tol) {
  const size_t n = raw.kappa.size();
  ModeSet set;
  set.vectors = raw.vectors;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // kappa ascending, infinite (trace-null) directions last
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const bool ia = raw.infinite[a], ib = raw.infinite[b];
    if (ia != ib) return !ia;
    return raw.kappa[a] < raw.kappa[b];
  });
  set.modes.reserve(n);
  for (int idx : order) {
    Mode m;
    m.kappa = raw.kappa[idx];
    m.residual = raw.residual.empty() ? std::numeric_limits<double>::quiet_NaN() : raw.residual[idx];
    m.vector_column = raw.vectors.cols() > 0 ? idx : -1;
    if (raw.infinite[idx]) {
      m.cls = ModeClass::TraceNull;
      m.kappa = std::numeric_limits<double>::infinity();
      m.omega = 0.0;
    } else if (std::abs(m.kappa - 1.0) <= kernel_tol) {
      m.cls = ModeClass::Kernel;
      m.omega = 0.0;
    } else if (m.kappa > 1.0 + positivity_tol) {
      m.cls = ModeClass::Physical;
      m.omega = std::sqrt(m.kappa - 1.0);
    } else {
      m.cls = ModeClass::Unresolved;
      m.omega = 0.0;
    }
    set.modes.push_back(m);
  }
  set.trace_null_count = set.count(ModeClass::TraceNull);
  return set;
}

std::vector<double> pencil_residuals(const AssembledPencil& pencil,
                                     const std::vector<double>& kappa,
                                     const Eigen::MatrixXd& vectors) {
  std::vector<double> res(kappa.size(), 0.0);
  for (size_t i = 0; i < kappa.size(); ++i) {
    const Eigen::VectorXd x = vectors.col(static_cast<long>(i));
    const double nx = x.norm();
    const double scale = nx > 0 ? nx : 1.0;
    if (!std::isfinite(kappa[i]))
      res[i] = (pencil.B * x).norm() / scale;  // B-degenerate direction
    else
      res[i] = (pencil.A * x - kappa[i] * (pencil.B * x)).norm() / scale;
  }
  return res;
}

namespace {

constexpr long kDenseGuard = 20000;
constexpr double kKernelZeroBand = 1e-6;  // |omega^2| treated as the kappa = 1 cluster

void check_dense_guard(const AssembledPencil& pencil) {
  if (pencil.dim > kDenseGuard)
    throw std::invalid_argument("dense solve rejected: pencil dimension " +
                                std::to_string(pencil.dim) + " exceeds the guard " +
                                std::to_string(kDenseGuard) + "; use shift-invert");
}

// Extract the rotation/stress coupling block of one element from B.
Eigen::MatrixXd element_coupling_block(const AssembledPencil& pencil, int element) {
  const DGSpacePair& sp = pencil.spaces;
  const int dr = sp.rotation_basis.size;
  const int dks4 = 4 * sp.stress_basis.size;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dr, dks4);
  const long col0 = static_cast<long>(element) * dks4;
  for (int j = 0; j < dr; ++j) {
    const long row = sp.rotation_index(element, j);
    for (SparseMatrix::InnerIterator it(pencil.B, row); it; ++it) {
      if (it.col() < col0 || it.col() >= col0 + dks4) continue;
      d(j, it.col() - col0) = it.value();
    }
  }
  return d;
}

// Exact constraint elimination: for kappa != 1 the rotation rows force the
// stress part into the element-local null space of the coupling D, where the
// pencil restricts to the symmetric-definite problem K_Z y = omega^2 M_Z y.
ModeSet solve_dense_reduced(const AssembledPencil& pencil, bool with_vectors) {
  const DGSpacePair& sp = pencil.spaces;
  const int ne = sp.num_elements;
  const int dr = sp.rotation_basis.size;
  const int dks4 = 4 * sp.stress_basis.size;
  const int zw = dks4 - dr;  // null-space dimension per element

  // Null basis of the element coupling block; identical for all elements of
  // an affine mesh up to the Jacobian scale, which is verified below.
  const Eigen::MatrixXd d0 = element_coupling_block(pencil, 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d0, Eigen::ComputeFullV);
  if (svd.rank() != dr)
    throw std::runtime_error("rotation/stress coupling block is rank deficient");
  const Eigen::MatrixXd z_ref = svd.matrixV().rightCols(zw);

  std::vector<Eigen::MatrixXd> pinv(ne);  // (D_e D_e^T)^{-1} D_e per element
  for (int e = 0; e < ne; ++e) {
    const Eigen::MatrixXd de = element_coupling_block(pencil, e);
    if ((de * z_ref).norm() > 1e-10 * de.norm())
      throw std::runtime_error("element coupling blocks are not proportional across elements");
    pinv[e] = (de * de.transpose()).ldlt().solve(de);
  }

  SparseMatrix z(pencil.dim, static_cast<long>(ne) * zw);
  {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(ne) * dks4 * zw);
    for (int e = 0; e < ne; ++e)
      for (int c = 0; c < zw; ++c)
        for (int r = 0; r < dks4; ++r)
          trip.emplace_back(static_cast<long>(e) * dks4 + r, static_cast<long>(e) * zw + c,
                            z_ref(r, c));
    z.setFromTriplets(trip.begin(), trip.end());
  }

  const SparseMatrix k_mat = pencil.A - pencil.B;  // stress-block DG terms only
  const long nred = z.cols();
  Eigen::MatrixXd kz = Eigen::MatrixXd((z.transpose() * (k_mat * z).eval()).eval());
  Eigen::MatrixXd mz = Eigen::MatrixXd((z.transpose() * (pencil.B * z).eval()).eval());

  std::vector<double> omega2(nred);
  const int info = LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, with_vectors ? 'V' : 'N', 'L',
                                  static_cast<int>(nred), kz.data(), static_cast<int>(nred),
                                  mz.data(), static_cast<int>(nred), omega2.data());
  if (info != 0)
    throw std::runtime_error("dsygvd failed with info " + std::to_string(info) +
                             (info > static_cast<int>(nred)
                                  ? " (reduced mass matrix not positive definite)"
                                  : ""));
  mz.resize(0, 0);

  RawEigenpairs raw;
  const long total = nred + sp.dim_rotation;
  raw.kappa.resize(total);
  raw.infinite.assign(total, false);
  for (long i = 0; i < nred; ++i) raw.kappa[i] = 1.0 + omega2[i];
  for (long i = nred; i < total; ++i) raw.kappa[i] = 1.0;  // rotation-only kernel modes

  if (with_vectors) {
    raw.vectors.setZero(pencil.dim, total);
    raw.vectors.leftCols(nred) = z * kz;  // stress parts; rotation rows stay zero
    kz.resize(0, 0);
    // Recover the rotation part from the first block row:
    // D^T p = K u / omega^2 - M u whenever omega^2 is outside the kernel band.
    Eigen::MatrixXd ku = k_mat * raw.vectors.leftCols(nred);
    Eigen::MatrixXd bu = pencil.B * raw.vectors.leftCols(nred);
    for (long m = 0; m < nred; ++m) {
      if (std::abs(omega2[m]) <= kKernelZeroBand) continue;
      const Eigen::VectorXd w = ku.col(m) / omega2[m] - bu.col(m);
      for (int e = 0; e < ne; ++e) {
        const Eigen::VectorXd pe = pinv[e] * w.segment(static_cast<long>(e) * dks4, dks4);
        raw.vectors.col(m).segment(sp.rotation_index(e, 0), dr) = pe;
      }
    }
    ku.resize(0, 0);
    bu.resize(0, 0);
    for (long j = 0; j < sp.dim_rotation; ++j) raw.vectors(sp.dim_stress + j, nred + j) = 1.0;

    raw.residual.resize(total);
    Eigen::MatrixXd ax = pencil.A * raw.vectors.leftCols(nred);
    Eigen::MatrixXd bx = pencil.B * raw.vectors.leftCols(nred);
    for (long m = 0; m < nred; ++m)
      raw.residual[m] =
          (ax.col(m) - raw.kappa[m] * bx.col(m)).norm() / raw.vectors.col(m).norm();
    // Rotation-only vectors are exact: A and B share the coupling block
    // bitwise and the difference carries no rotation columns.
    for (long m = nred; m < total; ++m) raw.residual[m] = 0.0;
  }

  ModeSet set = classify_modes(raw);
  set.method = "dense-reduction";
  long reduced_kernel = 0;
  for (long i = 0; i < nred; ++i)
    if (std::abs(omega2[i]) <= kKernelZeroBand) ++reduced_kernel;
  // Each rotation dof pairs with a constrained stress direction in a defective
  // 2-block at kappa = 1; the reduced zero modes add simple copies.
  set.kernel_algebraic_multiplicity = 2 * sp.dim_rotation + reduced_kernel;
  return set;
}

// Choose a representative-phase real part of a complex vector.
Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
  int imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  Eigen::VectorXcd scaled = v / (v[imax] / std::abs(v[imax]));
  return scaled.real();
}

ModeSet solve_dense_qz(const AssembledPencil& pencil, bool with_vectors) {
  const Eigen::MatrixXd a = Eigen::MatrixXd(pencil.A);
  const Eigen::MatrixXd b = Eigen::MatrixXd(pencil.B);
  Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges;
  ges.compute(a, b, with_vectors);
  if (ges.info() != Eigen::Success) throw std::runtime_error("QZ iteration failed to converge");

  const long n = pencil.dim;
  const double beta_floor = 1e-12 * ges.betas().cwiseAbs().maxCoeff();
  RawEigenpairs raw;
  raw.kappa.resize(n);
  raw.infinite.assign(n, false);
  for (long i = 0; i < n; ++i) {
    const double beta = ges.betas()[i];
    if (std::abs(beta) <= beta_floor) {
      raw.infinite[i] = true;
      raw.kappa[i] = std::numeric_limits<double>::infinity();
      continue;
    }
    const std::complex<double> kappa = ges.alphas()[i] / beta;
    // Complex pairs can only arise from the defective kappa = 1 cluster or
    // from roundoff; keep the real part and let the residual speak.
    raw.kappa[i] = kappa.real();
    if (std::abs(kappa.imag()) > 1e-6 * (1.0 + std::abs(kappa.real())))
      raw.kappa[i] = std::numeric_limits<double>::quiet_NaN();
  }
  if (with_vectors) {
    raw.vectors.resize(n, n);
    for (long i = 0; i < n; ++i) {
      Eigen::VectorXd x = realify(ges.eigenvectors().col(i));
      const double nx = x.norm();
      raw.vectors.col(i) = nx > 0 ? (x / nx).eval() : x;
    }
    raw.residual.resize(n);
    for (long i = 0; i < n; ++i) {
      const Eigen::VectorXd x = raw.vectors.col(i);
      raw.residual[i] = raw.infinite[i] ? (b * x).norm()
                                        : (a * x - raw.kappa[i] * (b * x)).norm();
    }
  }
  // NaN kappas (complex beyond tolerance) -> unresolved via comparison rules
  for (long i = 0; i < n; ++i)
    if (std::isnan(raw.kappa[i])) raw.kappa[i] = -std::numeric_limits<double>::infinity();

  ModeSet set = classify_modes(raw);
  set.method = "dense-qz";
  long kernel_alg = 0;
  for (long i = 0; i < n; ++i)
    if (!raw.infinite[i] && std::abs(raw.kappa[i] - 1.0) <= 1e-6) ++kernel_alg;
  set.kernel_algebraic_multiplicity = kernel_alg;
  return set;
}

}  // namespace

ModeSet solve_dense(const AssembledPencil& pencil, DenseMethod method, bool with_vectors) {
  check_dense_guard(pencil);
  if (method == DenseMethod::Auto)
    method = pencil.material.incompressible ? DenseMethod::QZ : DenseMethod::NullSpaceReduction;
  if (method == DenseMethod::NullSpaceReduction) {
    if (pencil.material.incompressible)
      throw std::invalid_argument(
          "null-space reduction requires a definite mass block; use QZ for incompressible runs");
    return solve_dense_reduced(pencil, with_vectors);
  }
  return solve_dense_qz(pencil, with_vectors);
}

}  // namespace dgeig
