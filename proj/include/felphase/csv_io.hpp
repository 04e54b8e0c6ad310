#pragma once

#include "felphase/mathieu.hpp"
#include "felphase/phase_space.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace felphase {

/// Shortest round-trip text for a double (%.17g).
std::string format_number(double v);

/// Matrix layout: first row = column nodes, first column = row nodes.
void write_matrix_csv(const std::filesystem::path& path, const std::string& corner,
                      const std::vector<double>& column_nodes, const std::vector<double>& row_nodes,
                      const std::vector<std::vector<double>>& rows);

/// Field layout: first row theta nodes, first column wp nodes.
void write_field_csv(const std::filesystem::path& path, const PhaseSpaceField& field);
/// Inverse of write_field_csv; grid recovered from the node row and column.
PhaseSpaceField read_field_csv(const std::filesystem::path& path, FieldKind kind, double time);

using Curve = std::vector<std::pair<double, double>>;

/// Two-column (x, y) CSV with a header line.
void write_curve_csv(const std::filesystem::path& path, const std::string& x_label,
                     const std::string& y_label, const Curve& curve);
Curve read_curve_csv(const std::filesystem::path& path);

/// Plain table with a header row.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// One row per band: n, energy, dominant label, then c_r^{nu+n} for r = -R..R.
void write_band_csv(const std::filesystem::path& path, const MathieuBand& band);

/// Pretty-printed JSON sidecar.
void write_metadata(const std::filesystem::path& path, const nlohmann::json& meta);

} // namespace felphase
