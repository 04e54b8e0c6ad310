#include "felphase/scenario.hpp"

#include "felphase/constants.hpp"
#include "felphase/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace felphase {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + std::string(t) + "'");
  return v;
}

long long to_integer(std::string_view key, std::string_view text) {
  long long v = 0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + std::string(t) + "'");
  return v;
}

std::size_t to_count(std::string_view key, std::string_view text) {
  const long long v = to_integer(key, text);
  if (v < 0)
    throw ConfigError("key '" + std::string(key) + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

LabParameters& lab_of(Scenario& sc) {
  if (!sc.lab) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    sc.lab = LabParameters{nan, nan, nan, nan, nan, nan, nan};
  }
  return *sc.lab;
}

using Setter = std::function<void(Scenario&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"alpha", [](Scenario& s, auto k, auto v) { s.model.alpha = to_double(k, v); }},
      {"epsilon", [](Scenario& s, auto k, auto v) { s.model.epsilon = to_double(k, v); }},
      {"chi", [](Scenario& s, auto k, auto v) { s.model.chi = to_double(k, v); }},
      {"times",
       [](Scenario& s, auto k, auto v) {
         s.model.times.clear();
         std::size_t start = 0;
         while (start <= v.size()) {
           const auto comma = v.find(',', start);
           const auto piece = v.substr(start, comma == std::string_view::npos ? v.npos : comma - start);
           s.model.times.push_back(to_double(k, piece));
           if (comma == std::string_view::npos)
             break;
           start = comma + 1;
         }
       }},
      {"mathieu_truncation",
       [](Scenario& s, auto k, auto v) { s.model.mathieu_truncation = static_cast<int>(to_integer(k, v)); }},
      {"recoil_truncation",
       [](Scenario& s, auto k, auto v) { s.model.recoil_truncation = static_cast<int>(to_integer(k, v)); }},
      {"series_terms", [](Scenario& s, auto k, auto v) { s.model.series_terms = static_cast<int>(to_integer(k, v)); }},
      {"wp_bar", [](Scenario& s, auto k, auto v) { s.wp_bar = to_double(k, v); }},
      {"dwp", [](Scenario& s, auto k, auto v) { s.dwp = to_double(k, v); }},
      {"n_theta", [](Scenario& s, auto k, auto v) { s.n_theta = to_count(k, v); }},
      {"n_wp", [](Scenario& s, auto k, auto v) { s.n_wp = to_count(k, v); }},
      {"wp_min", [](Scenario& s, auto k, auto v) { s.wp_min = to_double(k, v); }},
      {"wp_max", [](Scenario& s, auto k, auto v) { s.wp_max = to_double(k, v); }},
      {"nu", [](Scenario& s, auto k, auto v) { s.nu = to_double(k, v); }},
      {"gain_kind", [](Scenario& s, auto, auto v) { s.gain_kind = std::string(trim(v)); }},
      {"x_min", [](Scenario& s, auto k, auto v) { s.x_min = to_double(k, v); }},
      {"x_max", [](Scenario& s, auto k, auto v) { s.x_max = to_double(k, v); }},
      {"samples", [](Scenario& s, auto k, auto v) { s.samples = to_count(k, v); }},
      {"map_points", [](Scenario& s, auto k, auto v) { s.map_points = to_count(k, v); }},
      {"electron_density", [](Scenario& s, auto k, auto v) { lab_of(s).electron_density = to_double(k, v); }},
      {"wave_number", [](Scenario& s, auto k, auto v) { lab_of(s).wave_number = to_double(k, v); }},
      {"initial_field", [](Scenario& s, auto k, auto v) { lab_of(s).initial_field = to_double(k, v); }},
      {"wiggler_field", [](Scenario& s, auto k, auto v) { lab_of(s).wiggler_field = to_double(k, v); }},
      {"wiggler_wavelength", [](Scenario& s, auto k, auto v) { lab_of(s).wiggler_wavelength = to_double(k, v); }},
      {"wiggler_parameter", [](Scenario& s, auto k, auto v) { lab_of(s).wiggler_parameter = to_double(k, v); }},
      {"gamma", [](Scenario& s, auto k, auto v) { lab_of(s).gamma = to_double(k, v); }},
  };
  return table;
}

} // namespace

void Scenario::validate() const {
  static const std::set<std::string> commands = {"bands", "evolve", "distance", "gain", "figure", "estimate"};
  static const std::set<std::string> figures = {"1", "2", "3", "4a", "4bc", "5", "6"};
  static const std::set<std::string> gains = {"cold", "warm", "small_signal", "numeric"};
  if (!commands.count(command))
    throw ConfigError("unknown command '" + command + "'");
  if (command == "figure" && !figures.count(figure))
    throw ConfigError("unknown figure '" + figure + "' (expected 1, 2, 3, 4a, 4bc, 5 or 6)");
  if (!gains.count(gain_kind))
    throw ConfigError("gain_kind must be cold, warm, small_signal or numeric, got '" + gain_kind + "'");
  try {
    model.validate();
    GaussianMomentum(wp_bar, dwp);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (n_theta < 8 || n_wp < 8)
    throw ConfigError("n_theta and n_wp must be at least 8");
  if (wp_min.has_value() != wp_max.has_value())
    throw ConfigError("wp_min and wp_max must be given together");
  if (wp_min && !(*wp_min < *wp_max))
    throw ConfigError("wp_min must be smaller than wp_max");
  if (samples < 2)
    throw ConfigError("samples must be at least 2");
  if (!(x_min < x_max))
    throw ConfigError("x_min must be smaller than x_max");
  if (map_points < 2)
    throw ConfigError("map_points must be at least 2");
  if (command == "estimate") {
    if (!lab)
      throw ConfigError("estimate needs the laboratory keys electron_density, wave_number, initial_field, "
                        "wiggler_field, wiggler_wavelength, wiggler_parameter, gamma");
    try {
      lab->validate();
    } catch (const DomainError&) {
      throw ConfigError("every laboratory key must be given and strictly positive");
    }
  }
  const bool needs_times = command == "evolve" || command == "distance" ||
                           (command == "gain") || (command == "bands" && !model.times.empty());
  if (needs_times && model.times.empty())
    throw ConfigError("command '" + command + "' needs a non-empty 'times' list");
  if (command == "gain" && gain_kind != "numeric" && !(model.times.front() > 0.0))
    throw ConfigError("gain curves need a positive first entry in 'times'");
}

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second)
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + std::string(key) + "' given twice");
    it->second(sc, key, value);
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::vector<std::pair<std::string, std::string>> scenario_entries(const Scenario& sc) {
  std::string times;
  for (std::size_t i = 0; i < sc.model.times.size(); ++i)
    times += (i ? "," : "") + num(sc.model.times[i]);
  std::vector<std::pair<std::string, std::string>> out = {
      {"alpha", num(sc.model.alpha)},
      {"epsilon", num(sc.model.epsilon)},
      {"chi", num(sc.model.chi)},
      {"times", times},
      {"mathieu_truncation", sc.model.mathieu_truncation ? std::to_string(*sc.model.mathieu_truncation) : "auto"},
      {"recoil_truncation", sc.model.recoil_truncation ? std::to_string(*sc.model.recoil_truncation) : "auto"},
      {"series_terms", std::to_string(sc.model.series_terms)},
      {"wp_bar", num(sc.wp_bar)},
      {"dwp", num(sc.dwp)},
      {"n_theta", std::to_string(sc.n_theta)},
      {"n_wp", std::to_string(sc.n_wp)},
      {"wp_min", sc.wp_min ? num(*sc.wp_min) : "auto"},
      {"wp_max", sc.wp_max ? num(*sc.wp_max) : "auto"},
      {"nu", num(sc.nu)},
      {"gain_kind", sc.gain_kind},
      {"x_min", num(sc.x_min)},
      {"x_max", num(sc.x_max)},
      {"samples", std::to_string(sc.samples)},
      {"map_points", std::to_string(sc.map_points)},
  };
  if (sc.lab) {
    out.emplace_back("electron_density", num(sc.lab->electron_density));
    out.emplace_back("wave_number", num(sc.lab->wave_number));
    out.emplace_back("initial_field", num(sc.lab->initial_field));
    out.emplace_back("wiggler_field", num(sc.lab->wiggler_field));
    out.emplace_back("wiggler_wavelength", num(sc.lab->wiggler_wavelength));
    out.emplace_back("wiggler_parameter", num(sc.lab->wiggler_parameter));
    out.emplace_back("gamma", num(sc.lab->gamma));
  }
  return out;
}

Timescales estimate_timescales(const LabParameters& lab) {
  lab.validate();
  using namespace constants;
  const double omega_p = std::sqrt(elementary_charge * elementary_charge * lab.electron_density /
                                   (vacuum_permittivity * std::pow(lab.gamma, 3) * electron_mass));
  const double t_se = 3.0 * lab.wiggler_wavelength /
                      (two_pi * fine_structure * speed_of_light * lab.wiggler_parameter * lab.wiggler_parameter);
  return {1.0 / omega_p, t_se};
}

} // namespace felphase
