#pragma once

/**
 * @file csv.hpp
 * @brief CSV artifacts written by the CLI.
 *
 * Header row, comma separators, '\n' line endings and every number printed
 * with 17 significant digits so it parses back to the same double. Flags
 * are written as 0 / 1.
 *
 *   boundary.csv  t, b, gamma_bound, A
 *   errors.csv    k, d_k, log10_d_k
 *   value.csv     t, x, V, european, premium, gain, in_stopping_region
 *   alpha.csv     t, alpha
 */

#include <string>
#include <vector>

#include "osbou/mesh.hpp"
#include "osbou/ou_model.hpp"
#include "osbou/valuation.hpp"

namespace osbou {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Throws std::out_of_range for an unknown column name.
    std::vector<double> column(const std::string& name) const;
};

/// 17 significant digits.
std::string format_number(double v);

void write_csv(const std::string& path, const CsvTable& table);
/// Throws std::runtime_error with the path on I/O or parse failure.
CsvTable read_csv(const std::string& path);

/// gamma_bound and A are taken from `model`, evaluated at the boundary's
/// own mesh times.
CsvTable boundary_table(const OUModel& model, const Boundary& b);
CsvTable errors_table(const std::vector<double>& errors);
CsvTable value_table(const std::vector<ValuePoint>& points);
/// alpha sampled on `samples + 1` equispaced times of [0, T].
CsvTable alpha_table(const OUModel& model, std::size_t samples = 200);

}  // namespace osbou
