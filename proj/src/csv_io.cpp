#include "felphase/csv_io.hpp"

#include "felphase/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace felphase {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw NumericError("cannot write '" + path.string() + "'");
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ','))
    cells.push_back(cell);
  return cells;
}

double parse(const std::string& cell, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size() && cell.find_first_not_of(" \r", used) != std::string::npos)
      throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("malformed number '" + cell + "' in " + path.string());
  }
}

} // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::filesystem::path& path, const std::string& corner,
                      const std::vector<double>& column_nodes, const std::vector<double>& row_nodes,
                      const std::vector<std::vector<double>>& rows) {
  if (rows.size() != row_nodes.size())
    throw DomainError("matrix row count does not match its node list");
  auto out = open_out(path);
  out << corner;
  for (double c : column_nodes)
    out << ',' << format_number(c);
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != column_nodes.size())
      throw DomainError("matrix column count does not match its node list");
    out << format_number(row_nodes[r]);
    for (double v : rows[r])
      out << ',' << format_number(v);
    out << '\n';
  }
}

void write_field_csv(const std::filesystem::path& path, const PhaseSpaceField& field) {
  const auto& g = field.grid();
  std::vector<std::vector<double>> rows(g.n_wp(), std::vector<double>(g.n_theta()));
  for (std::size_t j = 0; j < g.n_wp(); ++j)
    for (std::size_t i = 0; i < g.n_theta(); ++i)
      rows[j][i] = field(i, j);
  write_matrix_csv(path, "wp\\theta", g.theta_nodes(), g.wp_nodes(), rows);
}

PhaseSpaceField read_field_csv(const std::filesystem::path& path, FieldKind kind, double time) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("empty field file " + path.string());
  const auto header = split(line);
  const std::size_t n_theta = header.size() - 1;
  std::vector<double> wp_nodes;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const auto cells = split(line);
    if (cells.size() != n_theta + 1)
      throw ConfigError("ragged row in " + path.string());
    wp_nodes.push_back(parse(cells[0], path));
    std::vector<double> row(n_theta);
    for (std::size_t i = 0; i < n_theta; ++i)
      row[i] = parse(cells[i + 1], path);
    rows.push_back(std::move(row));
  }
  if (wp_nodes.size() < 2)
    throw ConfigError("field file " + path.string() + " has fewer than two momentum rows");
  PhaseSpaceGrid grid(n_theta, wp_nodes.size(), wp_nodes.front(), wp_nodes.back());
  PhaseSpaceField field(grid, kind, time);
  for (std::size_t j = 0; j < wp_nodes.size(); ++j)
    for (std::size_t i = 0; i < n_theta; ++i)
      field(i, j) = rows[j][i];
  return field;
}

void write_curve_csv(const std::filesystem::path& path, const std::string& x_label, const std::string& y_label,
                     const Curve& curve) {
  auto out = open_out(path);
  out << x_label << ',' << y_label << '\n';
  for (const auto& [x, y] : curve)
    out << format_number(x) << ',' << format_number(y) << '\n';
}

Curve read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read '" + path.string() + "'");
  std::string line;
  std::getline(in, line); // header
  Curve curve;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const auto cells = split(line);
    if (cells.size() != 2)
      throw ConfigError("curve rows need two columns in " + path.string());
    curve.emplace_back(parse(cells[0], path), parse(cells[1], path));
  }
  return curve;
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t c = 0; c < header.size(); ++c)
    out << (c ? "," : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw DomainError("table row width does not match its header");
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

void write_band_csv(const std::filesystem::path& path, const MathieuBand& band) {
  auto out = open_out(path);
  const int R = band.half_width();
  out << "n,energy,dominant_label";
  for (int r = -R; r <= R; ++r)
    out << ",c" << r;
  out << '\n';
  for (int n = -R; n <= R; ++n) {
    out << n << ',' << format_number(band.energy(n)) << ',' << band.dominant_label(n);
    for (int r = -R; r <= R; ++r)
      out << ',' << format_number(band.coefficient(n, r));
    out << '\n';
  }
}

void write_metadata(const std::filesystem::path& path, const nlohmann::json& meta) {
  auto out = open_out(path);
  out << meta.dump(2) << '\n';
}

} // namespace felphase
