#pragma once

#include "felphase/scaling.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace felphase {

/// One CLI invocation: model, beam, grid and command-specific knobs.
///
/// Config files are flat `key = value` text; `#` starts a comment and
/// `times` takes a comma-separated list. Unknown or repeated keys are
/// rejected with ConfigError. See README for the key table.
struct Scenario {
  std::string command;  ///< bands | evolve | distance | gain | figure | estimate
  std::string figure;   ///< 1 | 2 | 3 | 4a | 4bc | 5 | 6 (figure command only)
  std::filesystem::path out_dir = ".";

  ModelConfig model;
  double wp_bar = 0.0;
  double dwp = 0.1;

  std::size_t n_theta = 256;
  std::size_t n_wp = 256;
  std::optional<double> wp_min;
  std::optional<double> wp_max;

  double nu = 0.0;                  ///< bands
  std::string gain_kind = "cold";   ///< cold | warm | small_signal | numeric
  double x_min = -6.3;
  double x_max = 6.3;
  std::size_t samples = 201;
  std::size_t map_points = 9;       ///< figure 4bc: nodes per axis

  std::optional<LabParameters> lab; ///< estimate

  /// Throws ConfigError with the offending key.
  void validate() const;
};

/// Parse config text; `command`, `figure` and `out_dir` are left at their defaults.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Every config key with its current value, as text (for metadata).
std::vector<std::pair<std::string, std::string>> scenario_entries(const Scenario& sc);

struct Timescales {
  double space_charge;        ///< T_sc = 1/omega_p [s]
  double spontaneous_emission; ///< T_se [s]
};

/// Plasma and spontaneous-emission timescales of a laboratory setup.
Timescales estimate_timescales(const LabParameters& lab);

} // namespace felphase
