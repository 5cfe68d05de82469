#pragma once

#include "dgeig/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dgeig {

// One solver run: mesh, discretization and solver parameters. E and rho
// default to 1 as in all shipped benchmarks.
struct RunConfig {
  int n = 8;
  int k = 3;
  double nu = 0.35;
  double a_s = 1000.0;
  double E = 1.0;
  double rho = 1.0;
  BoundaryPartition partition = BoundaryPartition::single(Side::Bottom);
  int modes = 10;
  Strategy strategy = Strategy::Auto;  // Auto: dense if dim <= 3000, else shift-invert
  double shift = 1.3;

  void validate() const;
};

// Builds the mesh/spaces/pencil for the configuration and solves it. With
// Strategy::ShiftInvert the request is padded and retried so that at least
// config.modes physical modes are available whenever they exist.
ModeSet run_solve(const RunConfig& config);
AssembledPencil build_pencil(const RunConfig& config);

struct FrequencyCell {
  double axis_value = 0.0;
  std::vector<double> omega;     // m smallest physical frequencies
  std::vector<bool> spurious;    // flags from matching against the reference run
  bool shortfall = false;        // fewer than m physical modes were available
};

struct FrequencyTable {
  std::string axis;  // "a_s" or "N"
  int m = 0;
  std::vector<FrequencyCell> cells;
  std::vector<double> reference;  // frequencies of the trusted reference run
};

// Greedy nearest matching of computed frequencies against a trusted
// reference list (relative tolerance 1e-2, each reference entry consumed at
// most once); unmatched entries are flagged spurious.
std::vector<bool> flag_spurious_frequencies(const std::vector<double>& computed,
                                            const std::vector<double>& reference);

// Stabilization sweep: one cell per a_s value, spurious entries flagged by
// matching against a reference run at reference_a_s.
FrequencyTable sweep_penalty(const RunConfig& base, const std::vector<double>& a_s_values,
                             double reference_a_s);

// Mesh refinement table; the largest N is the reference cell and carries no
// flags.
FrequencyTable refine_study(const RunConfig& base, const std::vector<int>& n_values);

// Three-parameter least-squares model omega(h) = omega_ex + C h^alpha.
struct OrderFit {
  double omega_ex = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double residual = 0.0;  // sum of squared fit residuals
  bool alpha_defined = true;
  std::vector<double> h, omega;
};

// Outer scan of alpha over [0.2, 5] at step 1e-3 with closed-form inner
// least squares for (omega_ex, C), refined by golden section to 1e-6.
OrderFit fit_order(const std::vector<double>& h_values, const std::vector<double>& omega_values);

struct ModeConvergence {
  int mode_index = 0;  // position in the sorted physical spectrum, 0-based
  OrderFit fit;
  double two_s_reference = 0.0;  // 2 * regularity exponent, NaN if unknown
};

// Tracks the selected physical modes across refinements (nearest-frequency
// matching, relative tolerance 5e-2) and fits the convergence order of each.
std::vector<ModeConvergence> convergence_study(const RunConfig& base,
                                               const std::vector<int>& n_values,
                                               const std::vector<int>& mode_indices);

struct LambdaLimitRow {
  double nu = 0.0;
  double lambda = 0.0;
  double omega = 0.0;
  double gap = 0.0;  // |omega(lambda) - omega(incompressible)|
};

struct LambdaLimitStudy {
  double omega_reference = 0.0;  // incompressible frequency of the tracked mode
  std::vector<LambdaLimitRow> rows;
  double slope = 0.0;  // log-log slope of gap vs lambda
  bool slope_defined = false;
};

// Distance of the tracked frequency to its incompressible limit as nu -> 1/2,
// with the fitted log-log decay rate in lambda.
LambdaLimitStudy lambda_limit_study(const RunConfig& base, const std::vector<double>& nu_values,
                                    int mode_index);

// Known Sobolev regularity exponents of the unit-square benchmark for
// nu = 0.35, 0.49, 0.5; NaN for other ratios.
double benchmark_regularity_exponent(double nu);

}  // namespace dgeig
