#include "felphase/csv_io.hpp"
#include "felphase/errors.hpp"
#include "felphase/run_scenario.hpp"
#include "felphase/scenario.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace felphase;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("felphase_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FELPHASE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Scenario scenario(const std::string& command, const std::string& text, const fs::path& out) {
  Scenario sc = parse_scenario(text);
  sc.command = command;
  sc.out_dir = out;
  return sc;
}

LabParameters lab() { return {1e20, 2.0 * std::numbers::pi / 1e-6, 1e9, 1.0, 0.03, 1.0, 100.0}; }

} // namespace

TEST_CASE("config parsing") {
  const auto sc = parse_scenario("# comment\nalpha = 10  # trailing\n times = 0, 1.5,3\n\ndwp=2\nrecoil_truncation = 12\n");
  CHECK(sc.model.alpha == 10.0);
  CHECK(sc.model.times == std::vector<double>{0.0, 1.5, 3.0});
  CHECK(sc.dwp == 2.0);
  CHECK(sc.model.recoil_truncation == 12);
  CHECK_FALSE(sc.model.mathieu_truncation.has_value());
  CHECK_THROWS_AS(parse_scenario("alpah = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("alpha = 1\nalpha = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("alpha = ten\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("alpha 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("n_wp = -3\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("times = 1,,2\n"), ConfigError);
}

TEST_CASE("scenario validation") {
  auto sc = parse_scenario("times = 1\n");
  sc.command = "evolve";
  CHECK_NOTHROW(sc.validate());
  sc.command = "plot";
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc.command = "figure";
  sc.figure = "7";
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = parse_scenario("alpha = -1\ntimes = 1\n");
  sc.command = "evolve";
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = parse_scenario("");
  sc.command = "distance";
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = parse_scenario("times = 1\nwp_min = 1\n");
  sc.command = "evolve";
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = parse_scenario("electron_density = 1e20\n");
  sc.command = "estimate";
  CHECK_THROWS_AS(sc.validate(), ConfigError);
}

TEST_CASE("timescales") {
  const auto t = estimate_timescales(lab());
  CHECK(t.spontaneous_emission == doctest::Approx(oracle::kSpontaneousTime).epsilon(1e-12));
  CHECK(t.space_charge == doctest::Approx(oracle::kPlasmaTime).epsilon(1e-12));
  auto dense = lab();
  dense.electron_density *= 4;
  CHECK(estimate_timescales(dense).space_charge == doctest::Approx(t.space_charge / 2).epsilon(1e-14));
  auto strong = lab();
  strong.wiggler_parameter *= 2;
  CHECK(estimate_timescales(strong).spontaneous_emission == doctest::Approx(t.spontaneous_emission / 4).epsilon(1e-14));
  auto bad = lab();
  bad.electron_density = 0;
  CHECK_THROWS_AS(estimate_timescales(bad), DomainError);
}

TEST_CASE("CSV round trips") {
  const auto dir = scratch("csv");
  const GaussianMomentum beam(0.1, 0.7);
  const PhaseSpaceGrid g(8, 12, -3.0, 3.5);
  const auto f = initial_field(beam, g, FieldKind::classical);
  write_field_csv(dir / "f.csv", f);
  const auto back = read_field_csv(dir / "f.csv", FieldKind::classical, 0.0);
  CHECK(back.grid() == g);
  for (std::size_t k = 0; k < f.values().size(); ++k)
    CHECK(back.values()[k] == f.values()[k]);
  const Curve c = {{0.0, 1.0 / 3.0}, {1e-300, -2.5e17}};
  write_curve_csv(dir / "c.csv", "x", "y", c);
  CHECK(read_curve_csv(dir / "c.csv") == c);
  CHECK(slurp(dir / "f.csv").rfind("wp\\theta,0,", 0) == 0);
  std::ofstream(dir / "bad.csv") << "x,y\n1,abc\n";
  CHECK_THROWS_AS(read_curve_csv(dir / "bad.csv"), ConfigError);
}

TEST_CASE("evolve at tau = 0 writes the sampled initial state") {
  const auto dir = scratch("evolve0");
  const auto sc = scenario("evolve", "alpha = 2\ndwp = 0.5\nwp_bar = 0.3\ntimes = 0\nn_theta = 16\nn_wp = 48\n", dir);
  std::ostringstream log;
  const auto report = run_scenario(sc, log);
  REQUIRE(report.exit_code == kExitOk);
  const auto w = read_field_csv(dir / "wigner_t0.csv", FieldKind::quantum, 0.0);
  const auto f = read_field_csv(dir / "classical_t0.csv", FieldKind::classical, 0.0);
  const GaussianMomentum beam(0.3, 0.5);
  for (std::size_t i = 0; i < w.grid().n_theta(); ++i)
    for (std::size_t j = 0; j < w.grid().n_wp(); ++j) {
      const double expect = beam.density(w.grid().wp(j)) / (2 * std::numbers::pi);
      CHECK(std::abs(w(i, j) - expect) < 1e-12);
      CHECK(std::abs(f(i, j) - expect) < 1e-15);
    }
  CHECK(report.files.back() == "evolve.meta.json");
  const auto meta = nlohmann::json::parse(slurp(dir / "evolve.meta.json"));
  CHECK(meta["software"]["name"] == "felphase");
  CHECK(meta["config"]["alpha"] == "2");
  CHECK(meta["config"]["series_terms"] == "8");
  CHECK(meta["tolerances"].contains("coefficient_tail"));
  const auto& run = meta["runs"][0];
  CHECK(run["recoil_truncation"].get<int>() > 0);
  CHECK(run["mathieu_truncation"].get<int>() > run["recoil_truncation"].get<int>());
  CHECK(run["grid"]["n_wp"] == 48);
  CHECK(meta["files"].size() + 1 == report.files.size());
  for (const auto& file : report.files)
    CHECK(fs::exists(dir / file));
}

TEST_CASE("identical configs give identical bytes") {
  const std::string text = "alpha = 1\ndwp = 0.4\ntimes = 0.5, 1.0\nn_theta = 16\nn_wp = 40\n";
  const auto a = scratch("det_a"), b = scratch("det_b");
  std::ostringstream log;
  REQUIRE(run_scenario(scenario("evolve", text, a), log).exit_code == kExitOk);
  REQUIRE(run_scenario(scenario("evolve", text, b), log).exit_code == kExitOk);
  for (const auto& e : fs::directory_iterator(a)) {
    const auto name = e.path().filename();
    CAPTURE(name);
    CHECK(slurp(e.path()) == slurp(b / name));
  }
}

TEST_CASE("exit codes") {
  std::ostringstream log;
  const auto dir = scratch("codes");
  auto bad = scenario("evolve", "alpha = 1\n", dir);
  const auto r2 = run_scenario(bad, log);
  CHECK(r2.exit_code == kExitConfig);
  CHECK(r2.message.find("times") != std::string::npos);
  auto numeric = scenario("evolve", "alpha = 10\ndwp = 0.1\ntimes = 3.14\nrecoil_truncation = 3\nn_theta = 16\nn_wp = 64\n", dir);
  const auto r3 = run_scenario(numeric, log);
  CHECK(r3.exit_code == kExitNumeric);
  CHECK(r3.message.find("recoil_truncation") != std::string::npos);
}

TEST_CASE("other commands") {
  std::ostringstream log;
  const auto dir = scratch("cmds");
  REQUIRE(run_scenario(scenario("bands", "alpha = 0.25\nnu = 0\ntimes = 0, 1\n", dir), log).exit_code == kExitOk);
  CHECK(fs::exists(dir / "bands.csv"));
  CHECK(fs::exists(dir / "amplitudes.csv"));
  REQUIRE(run_scenario(scenario("gain", "gain_kind = cold\ntimes = 2\nsamples = 21\nseries_terms = 1\n", dir), log)
              .exit_code == kExitOk);
  const auto g = read_curve_csv(dir / "gain_cold.csv");
  CHECK(g.size() == 21);
  CHECK(std::abs(g[10].second) < 1e-15);
  auto est = scenario("estimate",
                      "electron_density = 1e20\nwave_number = 6283185.307179586\ninitial_field = 1e9\n"
                      "wiggler_field = 1\nwiggler_wavelength = 0.03\nwiggler_parameter = 1\ngamma = 100\n",
                      dir);
  REQUIRE(run_scenario(est, log).exit_code == kExitOk);
  CHECK(slurp(dir / "estimate.csv").find("T_sc") != std::string::npos);
  REQUIRE(run_scenario(scenario("distance", "alpha = 10\ndwp = 2\ntimes = 0, 1\nn_theta = 16\nn_wp = 64\n", dir), log)
              .exit_code == kExitOk);
  const auto d = read_curve_csv(dir / "distance.csv");
  CHECK(d[0].second < 1e-10);
}

TEST_CASE("figure 5 preset") {
  std::ostringstream log;
  const auto dir = scratch("fig5");
  auto sc = scenario("figure", "", dir);
  sc.figure = "5";
  REQUIRE(run_scenario(sc, log).exit_code == kExitOk);
  for (const char* f : {"fig5_cold_classical.csv", "fig5_cold_wrt1.csv", "fig5_cold_wrt2.csv",
                        "fig5_warm_classical.csv", "fig5_warm_wrt3.csv", "fig5_warm_wrt7.csv", "figure5.meta.json"})
    CHECK(fs::exists(dir / f));
  double peak = 0.0;
  for (const auto& [x, y] : read_curve_csv(dir / "fig5_cold_classical.csv"))
    peak = std::max(peak, std::abs(y));
  CHECK(peak == doctest::Approx(1.0));
}

TEST_CASE("command-line binary") {
  const auto dir = scratch("binary");
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("") == kExitConfig);
  CHECK(run_cli("evolve --threads nope") == kExitConfig);
  CHECK(run_cli("evolve --config " + (dir / "missing.cfg").string()) == kExitConfig);
  std::ofstream(dir / "bad.cfg") << "alpha = 1\nfoo = 2\n";
  CHECK(run_cli("evolve --config " + (dir / "bad.cfg").string()) == kExitConfig);
  std::ofstream(dir / "num.cfg") << "alpha = 10\ndwp = 0.1\ntimes = 3\nrecoil_truncation = 3\nn_theta = 16\nn_wp = 64\n";
  CHECK(run_cli("evolve --config " + (dir / "num.cfg").string() + " --out " + dir.string()) == kExitNumeric);
  std::ofstream(dir / "ok.cfg") << "alpha = 1\ndwp = 0.5\ntimes = 0.5\nn_theta = 16\nn_wp = 48\n";
  CHECK(run_cli("evolve --config " + (dir / "ok.cfg").string() + " --out " + (dir / "o").string() + " --threads 1") ==
        0);
  CHECK(fs::exists(dir / "o" / "wigner_t0.csv"));
  CHECK(fs::exists(dir / "o" / "evolve.meta.json"));
}
