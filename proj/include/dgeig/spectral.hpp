#pragma once

#include "dgeig/forms.hpp"

#include <string>
#include <vector>

namespace dgeig {

// Classification of a generalized eigenvalue kappa of (A_h, B):
//   Kernel:    |kappa - 1| <= kernel_tol, the non-physical divergence-free /
//              rotation cluster;
//   Physical:  kappa > 1 + positivity_tol, vibration frequency
//              omega = sqrt(kappa - 1);
//   TraceNull: infinite / B-degenerate directions of incompressible runs;
//   Unresolved: anything else (under-resolved solve or sub-threshold
//              stabilization).
enum class ModeClass { Kernel, Physical, TraceNull, Unresolved };

const char* to_string(ModeClass c);

struct Mode {
  double kappa = 0.0;
  double omega = 0.0;  // sqrt(kappa - 1) for physical modes, else 0
  ModeClass cls = ModeClass::Unresolved;
  int vector_column = -1;  // column into ModeSet::vectors, -1 if not stored
  double residual = 0.0;   // ||A x - kappa B x|| / ||x|| (||B x|| / ||x|| for trace-null)
};

struct ModeSet {
  std::vector<Mode> modes;  // kappa ascending; trace-null modes last
  Eigen::MatrixXd vectors;
  std::string method;
  double shift = 0.0;
  double tolerance = 0.0;
  // Algebraic multiplicity of the kappa = 1 cluster when the solver can
  // determine it (the cluster is defective: it is larger than the number of
  // independent eigenvectors). 0 means not determined.
  long kernel_algebraic_multiplicity = 0;
  long trace_null_count = 0;

  long count(ModeClass c) const;
  // The m smallest physical frequencies (all of them if m < 0).
  std::vector<double> physical_omegas(int m = -1) const;
};

// Solver-agnostic eigenpair bundle prior to classification.
struct RawEigenpairs {
  std::vector<double> kappa;
  std::vector<bool> infinite;  // B-degenerate directions (kappa meaningless)
  std::vector<double> residual;
  Eigen::MatrixXd vectors;  // one column per eigenpair; may be empty
};

ModeSet classify_modes(const RawEigenpairs& raw, double kernel_tol = 1e-6,
                       double positivity_tol = 1e-6);

enum class Strategy { Auto, Dense, ShiftInvert };

struct SolveRequest {
  int m = 10;                           // wanted mode count
  Strategy strategy = Strategy::Auto;   // resolved by callers
  double shift = 1.3;                   // spectral transform target
  double tolerance = 1e-10;             // direct residual bound, relative to ||A||_1
  int max_iterations = 0;               // Krylov dimension cap; 0 = automatic
};

enum class DenseMethod {
  Auto,                // null-space reduction when B is definite, QZ otherwise
  NullSpaceReduction,  // exact constraint elimination + symmetric-definite solve
  QZ,                  // full pencil QZ; required when B is singular
};

// All finite eigenvalues of the pencil with eigenvectors and direct
// residuals. Guarded to dimensions <= 20000. with_vectors = false skips
// eigenvector extraction and residual certificates (eigenvalues only).
ModeSet solve_dense(const AssembledPencil& pencil, DenseMethod method = DenseMethod::Auto,
                    bool with_vectors = true);

// The request.m eigenvalues nearest request.shift via Arnoldi iteration on
// (A - shift B)^{-1} B with full reorthogonalization and a sparse LU
// factorization of the shifted pencil. Every returned mode carries a direct
// residual certificate below request.tolerance * ||A||_1.
//
// The kappa = 1 cluster sits close to the usual shifts with multiplicity at
// least dim Q_h, so the "nearest" list fills up with kernel copies.
// min_physical > 0 extends the returned head of the nearest-first ordering
// until it contains that many physical modes, all certified.
ModeSet solve_shift_invert(const AssembledPencil& pencil, const SolveRequest& request,
                           int min_physical = 0);

// Direct residuals ||A x - kappa B x|| / ||x|| for given eigenpair columns.
std::vector<double> pencil_residuals(const AssembledPencil& pencil,
                                     const std::vector<double>& kappa,
                                     const Eigen::MatrixXd& vectors);

}  // namespace dgeig
