#pragma once

#include "felphase/scenario.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace felphase {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

struct RunReport {
  int exit_code = kExitOk;
  std::vector<std::string> files; ///< written, relative to out_dir, sidecar last
  std::string message;            ///< error text when exit_code != 0
};

/// Execute a scenario and write its CSV files plus `<name>.meta.json`.
/// Config problems give exit 2, numerical failures exit 3. Progress and
/// warnings go to `log`.
RunReport run_scenario(const Scenario& scenario, std::ostream& log);

} // namespace felphase
