#include "felphase/errors.hpp"
#include "felphase/run_scenario.hpp"
#include "felphase/scenario.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Wigner and classical phase-space evolution of a low-gain FEL electron"};
  app.set_version_flag("--version", FELPHASE_VERSION);

  std::string command;
  std::string figure;
  std::string config;
  std::string out_dir = ".";
  int threads = 0;
  app.add_option("command", command, "bands | evolve | distance | gain | figure | estimate")->required();
  app.add_option("figure", figure, "figure id for `figure`: 1 2 3 4a 4bc 5 6");
  app.add_option("--config", config, "key = value configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "OpenMP threads (0 keeps the runtime default)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : felphase::kExitConfig;
  }

  if (threads > 0)
    omp_set_num_threads(threads);

  felphase::Scenario sc;
  try {
    if (!config.empty())
      sc = felphase::load_scenario(config);
  } catch (const felphase::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return felphase::kExitConfig;
  }
  sc.command = command;
  sc.figure = figure;
  sc.out_dir = out_dir;

  const felphase::RunReport report = felphase::run_scenario(sc, std::cerr);
  if (report.exit_code != felphase::kExitOk) {
    std::cerr << report.message << '\n';
    return report.exit_code;
  }
  for (const auto& f : report.files)
    std::cout << (sc.out_dir / f).string() << '\n';
  return 0;
}
