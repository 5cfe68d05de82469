#include "dgeig/io.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace dgeig {

using nlohmann::json;

std::string format_sig7(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.7g", value);
  return buf;
}

void write_modes_csv(std::ostream& os, const ModeSet& set, const std::string& config_echo,
                     int physical_limit) {
  os << "# config: " << config_echo << "\n";
  os << "# method: " << set.method << ", kernel: " << set.count(ModeClass::Kernel)
     << ", trace_null: " << set.trace_null_count
     << ", unresolved: " << set.count(ModeClass::Unresolved) << "\n";
  os << "index,kappa,omega,class,residual\n";
  int index = 0, physical = 0;
  for (const Mode& m : set.modes) {
    if (physical_limit >= 0) {
      if (m.cls != ModeClass::Physical) continue;
      if (physical++ >= physical_limit) break;
    }
    os << index++ << "," << format_sig7(m.kappa) << "," << format_sig7(m.omega) << ","
       << to_string(m.cls) << "," << format_sig7(m.residual) << "\n";
  }
}

void write_frequency_table_csv(std::ostream& os, const FrequencyTable& table,
                               const std::string& config_echo) {
  os << "# config: " << config_echo << "\n";
  os << "mode";
  for (const FrequencyCell& cell : table.cells)
    os << "," << table.axis << "=" << format_sig7(cell.axis_value) << ",spurious";
  os << "\n";
  for (int row = 0; row < table.m; ++row) {
    os << row + 1;
    for (const FrequencyCell& cell : table.cells) {
      if (row < static_cast<int>(cell.omega.size()))
        os << "," << format_sig7(cell.omega[row]) << "," << (cell.spurious[row] ? 1 : 0);
      else
        os << ",missing,";
    }
    os << "\n";
  }
}

void write_convergence_csv(std::ostream& os, const std::vector<ModeConvergence>& results,
                           const std::string& config_echo) {
  os << "# config: " << config_echo << "\n";
  os << "mode,alpha,omega_ex,C,fit_residual,two_s_reference";
  if (!results.empty())
    for (size_t i = 0; i < results.front().fit.h.size(); ++i)
      os << ",omega(h=" << format_sig7(results.front().fit.h[i]) << ")";
  os << "\n";
  for (const ModeConvergence& r : results) {
    os << r.mode_index + 1 << "," << (r.fit.alpha_defined ? format_sig7(r.fit.alpha) : "undefined")
       << "," << format_sig7(r.fit.omega_ex) << "," << format_sig7(r.fit.c) << ","
       << format_sig7(r.fit.residual) << ","
       << (std::isnan(r.two_s_reference) ? "unknown" : format_sig7(r.two_s_reference));
    for (double w : r.fit.omega) os << "," << format_sig7(w);
    os << "\n";
  }
}

void write_lambda_csv(std::ostream& os, const LambdaLimitStudy& study,
                      const std::string& config_echo) {
  os << "# config: " << config_echo << "\n";
  os << "# omega_reference: " << format_sig7(study.omega_reference)
     << ", slope: " << (study.slope_defined ? format_sig7(study.slope) : "undefined") << "\n";
  os << "nu,lambda,omega,gap\n";
  for (const LambdaLimitRow& row : study.rows)
    os << format_sig7(row.nu) << "," << format_sig7(row.lambda) << "," << format_sig7(row.omega)
       << "," << format_sig7(row.gap) << "\n";
}

void write_fit_csv(std::ostream& os, const OrderFit& fit, const std::string& config_echo) {
  os << "# config: " << config_echo << "\n";
  os << "alpha,omega_ex,C,fit_residual\n";
  os << (fit.alpha_defined ? format_sig7(fit.alpha) : "undefined") << ","
     << format_sig7(fit.omega_ex) << "," << format_sig7(fit.c) << "," << format_sig7(fit.residual)
     << "\n";
}

namespace {

json fit_to_json(const OrderFit& fit) {
  json j;
  j["alpha_defined"] = fit.alpha_defined;
  if (fit.alpha_defined) {
    j["alpha"] = fit.alpha;
    j["C"] = fit.c;
    j["fit_residual"] = fit.residual;
  }
  j["omega_ex"] = fit.omega_ex;
  j["h"] = fit.h;
  j["omega"] = fit.omega;
  return j;
}

}  // namespace

std::string modes_json(const ModeSet& set, const std::string& config_echo, int physical_limit) {
  json j;
  j["config"] = json::parse(config_echo, nullptr, false).is_discarded()
                    ? json(config_echo)
                    : json::parse(config_echo);
  j["method"] = set.method;
  j["kernel_count"] = set.count(ModeClass::Kernel);
  j["kernel_algebraic_multiplicity"] = set.kernel_algebraic_multiplicity;
  j["trace_null_count"] = set.trace_null_count;
  j["unresolved_count"] = set.count(ModeClass::Unresolved);
  json modes = json::array();
  int physical = 0;
  for (const Mode& m : set.modes) {
    if (physical_limit >= 0) {
      if (m.cls != ModeClass::Physical) continue;
      if (physical++ >= physical_limit) break;
    }
    json jm;
    jm["kappa"] = std::isfinite(m.kappa) ? json(m.kappa) : json("infinite");
    jm["omega"] = m.omega;
    jm["class"] = to_string(m.cls);
    jm["residual"] = m.residual;
    modes.push_back(jm);
  }
  j["modes"] = modes;
  return j.dump(2);
}

std::string frequency_table_json(const FrequencyTable& table, const std::string& config_echo) {
  json j;
  j["config"] = json::parse(config_echo, nullptr, false).is_discarded()
                    ? json(config_echo)
                    : json::parse(config_echo);
  j["axis"] = table.axis;
  j["m"] = table.m;
  j["reference"] = table.reference;
  json cells = json::array();
  for (const FrequencyCell& cell : table.cells) {
    json jc;
    jc["axis_value"] = cell.axis_value;
    jc["omega"] = cell.omega;
    jc["spurious"] = cell.spurious;
    jc["shortfall"] = cell.shortfall;
    cells.push_back(jc);
  }
  j["cells"] = cells;
  return j.dump(2);
}

std::string convergence_json(const std::vector<ModeConvergence>& results,
                             const std::string& config_echo) {
  json j;
  j["config"] = json::parse(config_echo, nullptr, false).is_discarded()
                    ? json(config_echo)
                    : json::parse(config_echo);
  json modes = json::array();
  for (const ModeConvergence& r : results) {
    json jm = fit_to_json(r.fit);
    jm["mode"] = r.mode_index + 1;
    if (!std::isnan(r.two_s_reference)) jm["two_s_reference"] = r.two_s_reference;
    modes.push_back(jm);
  }
  j["modes"] = modes;
  return j.dump(2);
}

std::string lambda_json(const LambdaLimitStudy& study, const std::string& config_echo) {
  json j;
  j["config"] = json::parse(config_echo, nullptr, false).is_discarded()
                    ? json(config_echo)
                    : json::parse(config_echo);
  j["omega_reference"] = study.omega_reference;
  j["slope_defined"] = study.slope_defined;
  if (study.slope_defined) j["slope"] = study.slope;
  json rows = json::array();
  for (const LambdaLimitRow& row : study.rows)
    rows.push_back({{"nu", row.nu}, {"lambda", row.lambda}, {"omega", row.omega}, {"gap", row.gap}});
  j["rows"] = rows;
  return j.dump(2);
}

std::string fit_json(const OrderFit& fit, const std::string& config_echo) {
  json j = fit_to_json(fit);
  j["config"] = json::parse(config_echo, nullptr, false).is_discarded()
                    ? json(config_echo)
                    : json::parse(config_echo);
  return j.dump(2);
}

void write_matrix_market(std::ostream& os, const SparseMatrix& m) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
  char buf[64];
  for (int r = 0; r < m.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      std::snprintf(buf, sizeof(buf), "%ld %ld %.17g\n", static_cast<long>(it.row()) + 1,
                    static_cast<long>(it.col()) + 1, it.value());
      os << buf;
    }
}

void write_mesh_json(std::ostream& os, const Mesh& mesh) {
  json j;
  j["n"] = mesh.n;
  j["h"] = mesh.h;
  j["partition"] = mesh.partition.name();
  json vertices = json::array();
  for (const auto& v : mesh.vertices) vertices.push_back({v.x(), v.y()});
  j["vertices"] = vertices;
  json triangles = json::array();
  for (const auto& t : mesh.triangles) triangles.push_back({t[0], t[1], t[2]});
  j["triangles"] = triangles;
  json faces = json::array();
  for (const Face& f : mesh.faces) {
    json jf;
    jf["vertices"] = {f.vertices[0], f.vertices[1]};
    jf["left"] = f.left;
    jf["left_local"] = f.left_local;
    if (f.right >= 0) {
      jf["right"] = f.right;
      jf["right_local"] = f.right_local;
    }
    jf["label"] = f.label == FaceLabel::Interior
                      ? "interior"
                      : (f.label == FaceLabel::Dirichlet ? "dirichlet" : "neumann");
    jf["normal"] = {f.normal.x(), f.normal.y()};
    jf["length"] = f.length;
    faces.push_back(jf);
  }
  j["faces"] = faces;
  os << j.dump(2) << "\n";
}

}  // namespace dgeig
