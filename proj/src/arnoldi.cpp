#include "dgeig/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

namespace dgeig {

namespace {

// Deterministic start vector: fixed-seed mt19937 mapped to [-1, 1) without
// going through distribution objects, whose output is implementation-defined.
Eigen::VectorXd deterministic_start(long n) {
  std::mt19937_64 rng(0x5eed5eedULL);
  Eigen::VectorXd v(n);
  for (long i = 0; i < n; ++i)
    v[i] = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  return v;
}

struct RitzPair {
  std::complex<double> theta;
  int index = 0;
  double estimate = 0.0;  // Arnoldi residual estimate in transform space
};

double matrix_one_norm(const SparseMatrix& m) {
  Eigen::VectorXd colsum = Eigen::VectorXd::Zero(m.cols());
  for (int r = 0; r < m.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) colsum[it.col()] += std::abs(it.value());
  return colsum.maxCoeff();
}

bool estimate_converged(const RitzPair& r) {
  const double mag = std::abs(r.theta);
  return std::abs(r.theta.imag()) <= 1e-10 * std::max(1.0, mag) &&
         r.estimate <= 1e-10 * std::max(mag, 1e-3);
}

}  // namespace

ModeSet solve_shift_invert(const AssembledPencil& pencil, const SolveRequest& request,
                           int min_physical) {
  const long n = pencil.dim;
  if (request.m < 1) throw std::invalid_argument("modes: wanted mode count must be >= 1");
  // Small pencils admit a full-space iteration; at scale the request must
  // leave Krylov headroom.
  if (request.m > std::max(n / 4, std::min(n, 8L)))
    throw std::invalid_argument("modes: wanted mode count " + std::to_string(request.m) +
                                " exceeds dimension/4 = " + std::to_string(n / 4));
  if (!(request.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const int m = request.m;
  const int ncv_max = static_cast<int>(
      request.max_iterations > 0 ? std::min<long>(request.max_iterations, n)
                                 : std::min<long>(n, std::max(20 * m, 300)));

  // Factor the spectral transform A - shift B once.
  Eigen::SparseMatrix<double> shifted = (pencil.A - request.shift * pencil.B);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error(
        "factorization of (A - shift B) failed; the shift may coincide with an eigenvalue, "
        "retry with a perturbed shift");
  shifted.resize(0, 0);
  const double residual_bound = request.tolerance * matrix_one_norm(pencil.A);
  const double positivity_tol = 1e-6;

  const auto apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return lu.solve(pencil.B * v);
  };

  Eigen::MatrixXd v_basis(n, ncv_max + 1);
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(ncv_max + 1, ncv_max);

  // Start in the range of the transform; strips B-null components.
  {
    const Eigen::VectorXd v0 = apply(deterministic_start(n));
    const double v0n = v0.norm();
    if (!(v0n > 0.0)) throw std::runtime_error("shift-invert start vector collapsed");
    v_basis.col(0) = v0 / v0n;
  }

  std::string failure = "did not converge";
  int j = 0;
  bool exhausted = false;
  while (!exhausted) {
    // Arnoldi step with an extra full reorthogonalization pass.
    Eigen::VectorXd w = apply(v_basis.col(j));
    Eigen::VectorXd coeffs = v_basis.leftCols(j + 1).transpose() * w;
    w.noalias() -= v_basis.leftCols(j + 1) * coeffs;
    const Eigen::VectorXd corr = v_basis.leftCols(j + 1).transpose() * w;
    w.noalias() -= v_basis.leftCols(j + 1) * corr;
    coeffs += corr;
    hess.block(0, j, j + 1, 1) = coeffs;
    const double hnext = w.norm();
    hess(j + 1, j) = hnext;
    ++j;
    const bool broke_down = hnext <= 1e-13 * std::max(1.0, coeffs.cwiseAbs().maxCoeff());
    if (!broke_down && j < ncv_max) v_basis.col(j) = w / hnext;
    exhausted = broke_down || j >= ncv_max;
    if (!exhausted && !(j >= std::max(2 * m, 20) && j % 10 == 0)) continue;
    if (j < m) {
      if (exhausted) throw std::runtime_error("Arnoldi breakdown before the wanted mode count");
      continue;
    }

    // Ritz extraction; largest |theta| = nearest the shift first.
    Eigen::EigenSolver<Eigen::MatrixXd> es(hess.topLeftCorner(j, j), true);
    if (es.info() != Eigen::Success) throw std::runtime_error("Hessenberg eigensolve failed");
    std::vector<RitzPair> ritz(j);
    for (int i = 0; i < j; ++i) {
      ritz[i].theta = es.eigenvalues()[i];
      ritz[i].index = i;
      ritz[i].estimate = (broke_down ? 0.0 : hnext) * std::abs(es.eigenvectors()(j - 1, i));
    }
    std::sort(ritz.begin(), ritz.end(), [](const RitzPair& a, const RitzPair& b) {
      const double ma = std::abs(a.theta), mb = std::abs(b.theta);
      if (ma != mb) return ma > mb;
      if (a.theta.real() != b.theta.real()) return a.theta.real() > b.theta.real();
      return a.theta.imag() > b.theta.imag();
    });

    // The returned set is a head of the nearest-first ordering: m entries,
    // extended if necessary until it contains min_physical physical
    // candidates. Every entry of the head must be certified so the physical
    // modes in it are the true leading ones. Unconverged duplicates of an
    // already converged eigenvalue (the kappa = 1 cluster keeps spawning
    // copies through rounding) are passed over instead of blocking.
    std::vector<double> converged_thetas;
    for (int i = 0; i < j; ++i)
      if (estimate_converged(ritz[i])) converged_thetas.push_back(ritz[i].theta.real());
    std::vector<int> head;
    int physical_seen = 0;
    bool blocked = false;
    for (int i = 0; i < j; ++i) {
      if (static_cast<int>(head.size()) >= m && physical_seen >= min_physical) break;
      const RitzPair& r = ritz[i];
      if (!estimate_converged(r)) {
        const bool duplicate =
            std::any_of(converged_thetas.begin(), converged_thetas.end(), [&](double t) {
              return std::abs(r.theta - std::complex<double>(t)) <= 1e-6 * std::max(1.0, std::abs(t));
            });
        if (duplicate) continue;
        blocked = true;
        break;
      }
      head.push_back(i);
      const double theta = r.theta.real();
      if (std::abs(theta) > 1e-300 && request.shift + 1.0 / theta > 1.0 + positivity_tol)
        ++physical_seen;
    }
    if (blocked || static_cast<int>(head.size()) < m || physical_seen < min_physical) {
      if (!exhausted) continue;
      failure = blocked ? "stalled on an unconverged eigenvalue near the shift"
                        : "converged only " + std::to_string(physical_seen) +
                              " physical modes (wanted " + std::to_string(min_physical) +
                              ") and " + std::to_string(head.size()) + " total (wanted " +
                              std::to_string(m) + ")";
      break;
    }

    // Direct residual certificates on the head.
    const int nh = static_cast<int>(head.size());
    RawEigenpairs raw;
    raw.vectors.resize(n, nh);
    raw.kappa.resize(nh);
    raw.infinite.assign(nh, false);
    for (int i = 0; i < nh; ++i) {
      const RitzPair& r = ritz[head[i]];
      if (std::abs(r.theta) < 1e-300) {
        raw.infinite[i] = true;
        raw.kappa[i] = std::numeric_limits<double>::infinity();
        raw.vectors.col(i).setZero();
        continue;
      }
      raw.kappa[i] = request.shift + 1.0 / r.theta.real();
      Eigen::VectorXcd q = es.eigenvectors().col(r.index);
      int imax = 0;
      q.cwiseAbs().maxCoeff(&imax);
      q /= q[imax] / std::abs(q[imax]);
      Eigen::VectorXd x = v_basis.leftCols(j) * q.real();
      const double nx = x.norm();
      if (nx > 0) x /= nx;
      raw.vectors.col(i) = x;
    }
    raw.residual = pencil_residuals(pencil, raw.kappa, raw.vectors);
    bool all_certified = true;
    for (int i = 0; i < nh; ++i)
      if (!raw.infinite[i] && !(raw.residual[i] <= residual_bound)) all_certified = false;
    if (!all_certified) {
      if (!exhausted) continue;
      double worst = 0.0;
      for (double r : raw.residual) worst = std::max(worst, r);
      failure = "worst residual " + std::to_string(worst) + " exceeds bound " +
                std::to_string(residual_bound);
      break;
    }

    ModeSet set = classify_modes(raw);
    set.method = "shift-invert";
    set.shift = request.shift;
    set.tolerance = request.tolerance;
    return set;
  }

  throw std::runtime_error("shift-invert " + failure + " within " + std::to_string(ncv_max) +
                           " iterations (dimension " + std::to_string(n) + ")");
}

}  // namespace dgeig
