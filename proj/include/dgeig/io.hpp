#pragma once

#include "dgeig/study.hpp"

#include <iosfwd>
#include <string>

namespace dgeig {

// Numbers in CSV output carry 7 significant digits.
std::string format_sig7(double value);

// Every CSV artifact starts with a '#'-prefixed provenance line echoing the
// resolved configuration, followed by a header row.
//
// physical_limit >= 0 restricts the rows to the that many smallest physical
// modes; classification counts stay in the header either way.
void write_modes_csv(std::ostream& os, const ModeSet& set, const std::string& config_echo,
                     int physical_limit = -1);
void write_frequency_table_csv(std::ostream& os, const FrequencyTable& table,
                               const std::string& config_echo);
void write_convergence_csv(std::ostream& os, const std::vector<ModeConvergence>& results,
                           const std::string& config_echo);
void write_lambda_csv(std::ostream& os, const LambdaLimitStudy& study,
                      const std::string& config_echo);
void write_fit_csv(std::ostream& os, const OrderFit& fit, const std::string& config_echo);

// JSON mirrors of the CSV content plus metadata (method, shift, counts).
std::string modes_json(const ModeSet& set, const std::string& config_echo,
                       int physical_limit = -1);
std::string frequency_table_json(const FrequencyTable& table, const std::string& config_echo);
std::string convergence_json(const std::vector<ModeConvergence>& results,
                             const std::string& config_echo);
std::string lambda_json(const LambdaLimitStudy& study, const std::string& config_echo);
std::string fit_json(const OrderFit& fit, const std::string& config_echo);

// MatrixMarket coordinate format (general, full storage).
void write_matrix_market(std::ostream& os, const SparseMatrix& m);

// Mesh debug export: vertices, triangles and face records.
void write_mesh_json(std::ostream& os, const Mesh& mesh);

}  // namespace dgeig
