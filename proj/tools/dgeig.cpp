// Command-line front end: mesh / assembly / solve / study pipelines with CSV
// and JSON artifacts. Exit codes: 0 success, 2 invalid configuration,
// 3 solver failure.

#include "dgeig/io.hpp"
#include "dgeig/study.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using dgeig::RunConfig;
using nlohmann::json;

struct CliConfig {
  RunConfig run;
  std::string bc = "bottom";
  std::string solver = "auto";
  std::string out = "-";
  std::string format = "csv";
  std::string export_mesh;
  std::string export_matrices;
  // study parameters
  std::vector<double> a_s_values;
  double reference_a_s = 1000.0;
  std::vector<int> n_values;
  std::vector<int> tracked_modes{1};  // 1-based on the CLI
  std::vector<double> nu_values;
  int limit_mode = 1;  // 1-based
  std::string fit_input;
};

void apply_config_file(CliConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: file is not valid JSON: " + std::string(e.what()));
  }
  const auto get = [&](const char* key, auto& target) {
    if (j.contains(key)) j.at(key).get_to(target);
  };
  get("N", cfg.run.n);
  get("k", cfg.run.k);
  get("nu", cfg.run.nu);
  get("aS", cfg.run.a_s);
  get("E", cfg.run.E);
  get("rho", cfg.run.rho);
  get("modes", cfg.run.modes);
  get("shift", cfg.run.shift);
  get("bc", cfg.bc);
  get("solver", cfg.solver);
  get("out", cfg.out);
  get("format", cfg.format);
  get("as_values", cfg.a_s_values);
  get("reference_as", cfg.reference_a_s);
  get("N_values", cfg.n_values);
  get("tracked_modes", cfg.tracked_modes);
  get("nu_values", cfg.nu_values);
  get("limit_mode", cfg.limit_mode);
}

void resolve(CliConfig& cfg) {
  cfg.run.partition = dgeig::BoundaryPartition::parse(cfg.bc);
  if (cfg.solver == "auto")
    cfg.run.strategy = dgeig::Strategy::Auto;
  else if (cfg.solver == "dense")
    cfg.run.strategy = dgeig::Strategy::Dense;
  else if (cfg.solver == "shift-invert")
    cfg.run.strategy = dgeig::Strategy::ShiftInvert;
  else
    throw std::invalid_argument("solver: expected auto|dense|shift-invert, got '" + cfg.solver +
                                "'");
  if (cfg.format != "csv" && cfg.format != "json")
    throw std::invalid_argument("format: expected csv|json, got '" + cfg.format + "'");
}

std::string config_echo(const CliConfig& cfg, const std::string& cmd) {
  json j;
  j["cmd"] = cmd;
  j["N"] = cfg.run.n;
  j["k"] = cfg.run.k;
  j["nu"] = cfg.run.nu;
  j["aS"] = cfg.run.a_s;
  j["E"] = cfg.run.E;
  j["rho"] = cfg.run.rho;
  j["bc"] = cfg.bc;
  j["modes"] = cfg.run.modes;
  j["solver"] = cfg.solver;
  j["shift"] = cfg.run.shift;
  j["format"] = cfg.format;
  if (cmd == "sweep-as") {
    j["as_values"] = cfg.a_s_values;
    j["reference_as"] = cfg.reference_a_s;
  } else if (cmd == "converge") {
    j["N_values"] = cfg.n_values;
    j["tracked_modes"] = cfg.tracked_modes;
  } else if (cmd == "limit") {
    j["nu_values"] = cfg.nu_values;
    j["limit_mode"] = cfg.limit_mode;
  } else if (cmd == "fit") {
    j["input"] = cfg.fit_input;
  }
  return j.dump();
}

void emit(const CliConfig& cfg, const std::string& text) {
  if (cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw std::invalid_argument("out: cannot open output file '" + cfg.out + "'");
  out << text;
}

int cmd_solve(CliConfig& cfg) {
  const std::string echo = config_echo(cfg, "solve");
  if (!cfg.export_mesh.empty()) {
    const dgeig::Mesh mesh = dgeig::build_uniform_mesh(cfg.run.n, cfg.run.partition);
    std::ofstream out(cfg.export_mesh);
    if (!out) throw std::invalid_argument("export-mesh: cannot open '" + cfg.export_mesh + "'");
    dgeig::write_mesh_json(out, mesh);
  }
  if (!cfg.export_matrices.empty()) {
    const dgeig::AssembledPencil pencil = dgeig::build_pencil(cfg.run);
    std::ofstream a(cfg.export_matrices + ".A.mtx"), b(cfg.export_matrices + ".B.mtx");
    if (!a || !b)
      throw std::invalid_argument("export-matrices: cannot open '" + cfg.export_matrices +
                                  ".{A,B}.mtx'");
    dgeig::write_matrix_market(a, pencil.A);
    dgeig::write_matrix_market(b, pencil.B);
  }
  const dgeig::ModeSet set = dgeig::run_solve(cfg.run);
  std::ostringstream os;
  if (cfg.format == "csv")
    dgeig::write_modes_csv(os, set, echo, cfg.run.modes);
  else
    os << dgeig::modes_json(set, echo, cfg.run.modes) << "\n";
  emit(cfg, os.str());
  return 0;
}

int cmd_sweep_as(CliConfig& cfg) {
  const std::string echo = config_echo(cfg, "sweep-as");
  const dgeig::FrequencyTable table =
      dgeig::sweep_penalty(cfg.run, cfg.a_s_values, cfg.reference_a_s);
  std::ostringstream os;
  if (cfg.format == "csv")
    dgeig::write_frequency_table_csv(os, table, echo);
  else
    os << dgeig::frequency_table_json(table, echo) << "\n";
  emit(cfg, os.str());
  return 0;
}

int cmd_converge(CliConfig& cfg) {
  const std::string echo = config_echo(cfg, "converge");
  std::vector<int> modes0;
  for (int m : cfg.tracked_modes) {
    if (m < 1) throw std::invalid_argument("tracked modes are 1-based, got " + std::to_string(m));
    modes0.push_back(m - 1);
  }
  const auto results = dgeig::convergence_study(cfg.run, cfg.n_values, modes0);
  std::ostringstream os;
  if (cfg.format == "csv")
    dgeig::write_convergence_csv(os, results, echo);
  else
    os << dgeig::convergence_json(results, echo) << "\n";
  emit(cfg, os.str());
  for (const auto& r : results)
    std::cerr << "mode " << r.mode_index + 1 << ": alpha = "
              << (r.fit.alpha_defined ? dgeig::format_sig7(r.fit.alpha) : "undefined")
              << ", omega_ex = " << dgeig::format_sig7(r.fit.omega_ex)
              << ", 2s reference = " << dgeig::format_sig7(r.two_s_reference) << "\n";
  return 0;
}

int cmd_limit(CliConfig& cfg) {
  const std::string echo = config_echo(cfg, "limit");
  if (cfg.limit_mode < 1) throw std::invalid_argument("limit mode is 1-based");
  const dgeig::LambdaLimitStudy study =
      dgeig::lambda_limit_study(cfg.run, cfg.nu_values, cfg.limit_mode - 1);
  std::ostringstream os;
  if (cfg.format == "csv")
    dgeig::write_lambda_csv(os, study, echo);
  else
    os << dgeig::lambda_json(study, echo) << "\n";
  emit(cfg, os.str());
  return 0;
}

int cmd_fit(CliConfig& cfg) {
  const std::string echo = config_echo(cfg, "fit");
  std::ifstream in(cfg.fit_input);
  if (!in) throw std::invalid_argument("input: cannot open '" + cfg.fit_input + "'");
  std::vector<double> h, omega;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, b;
    if (row >> a >> b) {
      h.push_back(a);
      omega.push_back(b);
    }
  }
  const dgeig::OrderFit fit = dgeig::fit_order(h, omega);
  std::ostringstream os;
  if (cfg.format == "csv")
    dgeig::write_fit_csv(os, fit, echo);
  else
    os << dgeig::fit_json(fit, echo) << "\n";
  emit(cfg, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interior-penalty DG solver for the dual-mixed elasticity eigenproblem "
               "on the unit square"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; explicit flags override it");

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--N", cfg.run.n, "elements per edge (even, >= 2)");
    sub->add_option("--k", cfg.run.k, "stress polynomial degree (>= 1)");
    sub->add_option("--nu", cfg.run.nu, "Poisson ratio in (0, 1/2]");
    sub->add_option("--aS", cfg.run.a_s, "stabilization parameter");
    sub->add_option("--E", cfg.run.E, "Young modulus");
    sub->add_option("--rho", cfg.run.rho, "mass density");
    sub->add_option("--bc", cfg.bc, "Dirichlet side: bottom|right|top|left|all-dirichlet");
    sub->add_option("--modes", cfg.run.modes, "number of physical frequencies to report");
    sub->add_option("--solver", cfg.solver, "auto|dense|shift-invert");
    sub->add_option("--shift", cfg.run.shift, "shift-invert target");
    sub->add_option("--out", cfg.out, "output path, '-' for stdout");
    sub->add_option("--format", cfg.format, "csv|json");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one configuration");
  add_common(solve);
  solve->add_option("--export-mesh", cfg.export_mesh, "write the mesh as JSON to this path");
  solve->add_option("--export-matrices", cfg.export_matrices,
                    "write PREFIX.A.mtx / PREFIX.B.mtx in MatrixMarket format");

  CLI::App* sweep = app.add_subcommand("sweep-as", "stabilization sweep with spurious flags");
  add_common(sweep);
  sweep->add_option("--as", cfg.a_s_values, "swept stabilization values")
      ->delimiter(',')
      ->required();
  sweep->add_option("--reference-as", cfg.reference_a_s, "trusted reference stabilization");

  CLI::App* converge = app.add_subcommand("converge", "refinement study with order fits");
  add_common(converge);
  converge->add_option("--N-values", cfg.n_values, "refinement levels, ascending")
      ->delimiter(',')
      ->required();
  converge->add_option("--mode", cfg.tracked_modes, "tracked physical modes (1-based)")
      ->delimiter(',');

  CLI::App* limit = app.add_subcommand("limit", "incompressible-limit study");
  add_common(limit);
  limit->add_option("--nu-values", cfg.nu_values, "Poisson ratios increasing toward 1/2")
      ->delimiter(',')
      ->required();
  limit->add_option("--mode", cfg.limit_mode, "tracked physical mode (1-based)");

  CLI::App* fit = app.add_subcommand("fit", "order fit of an (h, omega) table");
  fit->add_option("--input", cfg.fit_input, "CSV of h,omega rows")->required();
  fit->add_option("--out", cfg.out, "output path, '-' for stdout");
  fit->add_option("--format", cfg.format, "csv|json");

  // Config file values act as defaults under explicit flags: load before the
  // full parse, then let CLI11 overwrite whatever was given on the line.
  try {
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config") apply_config_file(cfg, argv[i + 1]);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    resolve(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (sweep->parsed()) return cmd_sweep_as(cfg);
    if (converge->parsed()) return cmd_converge(cfg);
    if (limit->parsed()) return cmd_limit(cfg);
    if (fit->parsed()) return cmd_fit(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
