#include "dgeig/study.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dgeig {

namespace {

constexpr long kAutoDenseLimit = 3000;
constexpr double kSpuriousMatchTol = 1e-2;  // relative, greedy nearest matching
constexpr double kTrackingTol = 5e-2;       // relative, mode tracking across refinements

}  // namespace

std::vector<bool> flag_spurious_frequencies(const std::vector<double>& cell,
                                            const std::vector<double>& reference) {
  std::vector<bool> flags(cell.size(), false);
  std::vector<bool> used(reference.size(), false);
  for (size_t i = 0; i < cell.size(); ++i) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (size_t r = 0; r < reference.size(); ++r) {
      if (used[r]) continue;
      const double dist = std::abs(cell[i] - reference[r]);
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(r);
      }
    }
    if (best >= 0 && best_dist <= kSpuriousMatchTol * std::abs(reference[best]))
      used[best] = true;
    else
      flags[i] = true;
  }
  return flags;
}

namespace {

FrequencyCell make_cell(const RunConfig& config, double axis_value) {
  FrequencyCell cell;
  cell.axis_value = axis_value;
  cell.omega = run_solve(config).physical_omegas(config.modes);
  cell.shortfall = static_cast<int>(cell.omega.size()) < config.modes;
  cell.spurious.assign(cell.omega.size(), false);
  return cell;
}

}  // namespace

void RunConfig::validate() const {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("N: refinement parameter must be even and >= 2");
  if (k < 1) throw std::invalid_argument("k: polynomial degree must be >= 1");
  if (!(a_s > 0.0)) throw std::invalid_argument("aS: stabilization parameter must be positive");
  if (modes < 1) throw std::invalid_argument("modes: wanted mode count must be >= 1");
  partition.validate();
  material_from_E_nu(E, nu, rho);  // validates E, nu, rho
}

AssembledPencil build_pencil(const RunConfig& config) {
  config.validate();
  const Mesh mesh = build_uniform_mesh(config.n, config.partition);
  const DGSpacePair spaces = build_spaces(mesh, config.k);
  const MaterialModel material = material_from_E_nu(config.E, config.nu, config.rho);
  return assemble_pencil(mesh, spaces, material, config.a_s);
}

ModeSet run_solve(const RunConfig& config) {
  const AssembledPencil pencil = build_pencil(config);
  Strategy strategy = config.strategy;
  if (strategy == Strategy::Auto)
    strategy = pencil.dim <= kAutoDenseLimit ? Strategy::Dense : Strategy::ShiftInvert;
  if (strategy == Strategy::Dense) return solve_dense(pencil);

  SolveRequest request;
  request.m = static_cast<int>(std::min<long>(config.modes, std::max(pencil.dim / 4, 1L)));
  request.strategy = Strategy::ShiftInvert;
  request.shift = config.shift;
  return solve_shift_invert(pencil, request, config.modes);
}

FrequencyTable sweep_penalty(const RunConfig& base, const std::vector<double>& a_s_values,
                             double reference_a_s) {
  if (a_s_values.empty()) throw std::invalid_argument("aS sweep: empty value list");
  if (reference_a_s < *std::max_element(a_s_values.begin(), a_s_values.end()))
    throw std::invalid_argument("aS sweep: reference value must dominate the swept values");
  FrequencyTable table;
  table.axis = "a_s";
  table.m = base.modes;

  RunConfig ref = base;
  ref.a_s = reference_a_s;
  try {
    table.reference = run_solve(ref).physical_omegas(base.modes);
  } catch (const std::exception& e) {
    throw std::runtime_error("aS sweep reference run (aS = " + std::to_string(reference_a_s) +
                             ") failed: " + e.what());
  }
  for (double a_s : a_s_values) {
    RunConfig config = base;
    config.a_s = a_s;
    try {
      FrequencyCell cell = make_cell(config, a_s);
      cell.spurious = flag_spurious_frequencies(cell.omega, table.reference);
      table.cells.push_back(std::move(cell));
    } catch (const std::exception& e) {
      throw std::runtime_error("aS sweep run (aS = " + std::to_string(a_s) +
                               ") failed: " + e.what());
    }
  }
  return table;
}

FrequencyTable refine_study(const RunConfig& base, const std::vector<int>& n_values) {
  if (n_values.empty()) throw std::invalid_argument("refinement study: empty N list");
  if (!std::is_sorted(n_values.begin(), n_values.end()))
    throw std::invalid_argument("refinement study: N values must be ascending");
  FrequencyTable table;
  table.axis = "N";
  table.m = base.modes;
  for (int n : n_values) {
    RunConfig config = base;
    config.n = n;
    try {
      table.cells.push_back(make_cell(config, n));
    } catch (const std::exception& e) {
      throw std::runtime_error("refinement run (N = " + std::to_string(n) +
                               ") failed: " + e.what());
    }
  }
  table.reference = table.cells.back().omega;
  for (size_t i = 0; i + 1 < table.cells.size(); ++i)
    table.cells[i].spurious = flag_spurious_frequencies(table.cells[i].omega, table.reference);
  return table;
}

OrderFit fit_order(const std::vector<double>& h_values, const std::vector<double>& omega_values) {
  if (h_values.size() != omega_values.size())
    throw std::invalid_argument("fit: h and omega lists differ in length");
  if (h_values.size() < 3) throw std::invalid_argument("fit: need at least 3 data points");
  for (double h : h_values)
    if (!(h > 0.0)) throw std::invalid_argument("fit: mesh sizes must be positive");
  {
    std::vector<double> sorted = h_values;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("fit: mesh sizes must be distinct");
  }

  OrderFit fit;
  fit.h = h_values;
  fit.omega = omega_values;

  const double spread = *std::max_element(omega_values.begin(), omega_values.end()) -
                        *std::min_element(omega_values.begin(), omega_values.end());
  if (spread == 0.0) {
    fit.alpha_defined = false;
    fit.omega_ex = omega_values.front();
    return fit;
  }

  const auto n = static_cast<double>(h_values.size());
  // Closed-form least squares for (omega_ex, C) at fixed alpha.
  const auto solve_at = [&](double alpha, double& omega_ex, double& c) {
    double sp = 0, spp = 0, sw = 0, swp = 0;
    for (size_t i = 0; i < h_values.size(); ++i) {
      const double p = std::pow(h_values[i], alpha);
      sp += p;
      spp += p * p;
      sw += omega_values[i];
      swp += omega_values[i] * p;
    }
    const double det = n * spp - sp * sp;
    omega_ex = (spp * sw - sp * swp) / det;
    c = (n * swp - sp * sw) / det;
    double ss = 0;
    for (size_t i = 0; i < h_values.size(); ++i) {
      const double r = omega_ex + c * std::pow(h_values[i], alpha) - omega_values[i];
      ss += r * r;
    }
    return ss;
  };

  double best_alpha = 0.2, best_ss = std::numeric_limits<double>::infinity();
  double oe, c;
  for (double alpha = 0.2; alpha <= 5.0 + 1e-12; alpha += 1e-3) {
    const double ss = solve_at(alpha, oe, c);
    if (ss < best_ss) {
      best_ss = ss;
      best_alpha = alpha;
    }
  }
  // Golden-section refinement around the scan minimum.
  double lo = std::max(0.2, best_alpha - 2e-3), hi = std::min(5.0, best_alpha + 2e-3);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = solve_at(x1, oe, c), f2 = solve_at(x2, oe, c);
  while (hi - lo > 1e-6) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = solve_at(x1, oe, c);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = solve_at(x2, oe, c);
    }
  }
  fit.alpha = 0.5 * (lo + hi);
  fit.residual = solve_at(fit.alpha, fit.omega_ex, fit.c);
  return fit;
}

std::vector<ModeConvergence> convergence_study(const RunConfig& base,
                                               const std::vector<int>& n_values,
                                               const std::vector<int>& mode_indices) {
  if (n_values.size() < 3)
    throw std::invalid_argument("convergence study: need at least 3 refinement levels");
  if (!std::is_sorted(n_values.begin(), n_values.end()))
    throw std::invalid_argument("convergence study: N values must be ascending");
  if (mode_indices.empty()) throw std::invalid_argument("convergence study: no modes selected");

  const int need = 1 + *std::max_element(mode_indices.begin(), mode_indices.end());
  std::vector<std::vector<double>> per_n;
  for (int n : n_values) {
    RunConfig config = base;
    config.n = n;
    config.modes = std::max(base.modes, need + 2);
    per_n.push_back(run_solve(config).physical_omegas(config.modes));
    if (static_cast<int>(per_n.back().size()) < need)
      throw std::runtime_error("convergence study: run N = " + std::to_string(n) +
                               " produced fewer than " + std::to_string(need) +
                               " physical modes");
  }

  // Track against the finest run: for each tracked mode pick the nearest
  // frequency in every coarser run.
  const std::vector<double>& finest = per_n.back();
  std::vector<ModeConvergence> out;
  for (int mode : mode_indices) {
    const double target = finest[mode];
    std::vector<double> h, omega;
    for (size_t level = 0; level < per_n.size(); ++level) {
      int best = -1;
      double best_dist = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < per_n[level].size(); ++i) {
        const double dist = std::abs(per_n[level][i] - target);
        if (dist < best_dist) {
          best_dist = dist;
          best = static_cast<int>(i);
        }
      }
      if (best < 0 || best_dist > kTrackingTol * target)
        throw std::runtime_error("convergence study: mode " + std::to_string(mode) +
                                 " is not matchable at N = " +
                                 std::to_string(n_values[level]));
      h.push_back(1.0 / n_values[level]);
      omega.push_back(per_n[level][best]);
    }
    ModeConvergence mc;
    mc.mode_index = mode;
    mc.fit = fit_order(h, omega);
    mc.two_s_reference = 2.0 * benchmark_regularity_exponent(base.nu);
    out.push_back(std::move(mc));
  }
  return out;
}

LambdaLimitStudy lambda_limit_study(const RunConfig& base, const std::vector<double>& nu_values,
                                    int mode_index) {
  if (nu_values.empty()) throw std::invalid_argument("limit study: empty nu list");
  for (size_t i = 0; i + 1 < nu_values.size(); ++i)
    if (!(nu_values[i] < nu_values[i + 1]))
      throw std::invalid_argument("limit study: nu values must be strictly increasing");
  for (double nu : nu_values)
    if (!(nu > 0.0 && nu < 0.5))
      throw std::invalid_argument("limit study: nu values must lie strictly inside (0, 1/2)");

  LambdaLimitStudy study;
  const int need = mode_index + 1;
  RunConfig ref = base;
  ref.nu = 0.5;
  ref.modes = std::max(base.modes, need + 2);
  {
    const std::vector<double> omegas = run_solve(ref).physical_omegas(ref.modes);
    if (static_cast<int>(omegas.size()) < need)
      throw std::runtime_error("limit study: incompressible reference run produced fewer than " +
                               std::to_string(need) + " physical modes");
    study.omega_reference = omegas[mode_index];
  }

  for (double nu : nu_values) {
    RunConfig config = base;
    config.nu = nu;
    config.modes = std::max(base.modes, need + 2);
    const std::vector<double> omegas = run_solve(config).physical_omegas(config.modes);
    if (static_cast<int>(omegas.size()) < need)
      throw std::runtime_error("limit study: run nu = " + std::to_string(nu) +
                               " produced fewer than " + std::to_string(need) +
                               " physical modes");
    LambdaLimitRow row;
    row.nu = nu;
    row.lambda = material_from_E_nu(base.E, nu, base.rho).lambda;
    row.omega = omegas[mode_index];
    row.gap = std::abs(row.omega - study.omega_reference);
    study.rows.push_back(row);
  }

  // Log-log slope of the gap against lambda over rows with a nonzero gap.
  std::vector<double> lx, ly;
  for (const LambdaLimitRow& row : study.rows)
    if (row.gap > 0.0) {
      lx.push_back(std::log(row.lambda));
      ly.push_back(std::log(row.gap));
    }
  if (lx.size() >= 2) {
    const auto n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    const double det = n * sxx - sx * sx;
    if (det > 0.0) {
      study.slope = (n * sxy - sx * sy) / det;
      study.slope_defined = true;
    }
  }
  return study;
}

double benchmark_regularity_exponent(double nu) {
  constexpr double tol = 1e-12;
  if (std::abs(nu - 0.35) <= tol) return 0.6797;
  if (std::abs(nu - 0.49) <= tol) return 0.5999;
  if (std::abs(nu - 0.5) <= tol) return 0.5946;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace dgeig
