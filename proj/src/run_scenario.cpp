#include "felphase/run_scenario.hpp"

#include "felphase/classical_evolution.hpp"
#include "felphase/constants.hpp"
#include "felphase/csv_io.hpp"
#include "felphase/errors.hpp"
#include "felphase/mathieu.hpp"
#include "felphase/observables.hpp"
#include "felphase/perturbation.hpp"
#include "felphase/quantum_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace felphase {

namespace {

using nlohmann::json;
using std::numbers::pi;

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k)
    v[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  auto v = linspace(std::log(a), std::log(b), n);
  for (double& x : v)
    x = std::exp(x);
  return v;
}

json grid_json(const PhaseSpaceGrid& g) {
  return {{"n_theta", g.n_theta()}, {"n_wp", g.n_wp()}, {"wp_min", g.wp_min()}, {"wp_max", g.wp_max()}};
}

json tolerances_json() {
  return {{"coefficient_tail", kCoefficientTail},
          {"unitarity", 1e-10},
          {"recoil_edge_term", 1e-9},
          {"rho_cutoff", 1e-16},
          {"grid_tail_mass", kGridTailMass},
          {"separatrix", kSeparatrixTolerance},
          {"series_stop", 1e-12}};
}

// Collects outputs and metadata for one invocation.
class Output {
public:
  Output(const Scenario& sc, std::string name) : sc_(sc), name_(std::move(name)) {
    meta_["software"] = {{"name", "felphase"}, {"version", FELPHASE_VERSION}};
    meta_["command"] = sc.command;
    if (sc.command == "figure")
      meta_["figure"] = sc.figure;
    json cfg = json::object();
    for (const auto& [k, v] : scenario_entries(sc))
      cfg[k] = v;
    meta_["config"] = cfg;
    meta_["tolerances"] = tolerances_json();
    meta_["runs"] = json::array();
  }

  void field(const std::string& file, const PhaseSpaceField& f) {
    write_field_csv(sc_.out_dir / file, f);
    files_.push_back(file);
  }
  void curve(const std::string& file, const std::string& x, const std::string& y, const Curve& c) {
    write_curve_csv(sc_.out_dir / file, x, y, c);
    files_.push_back(file);
  }
  void table(const std::string& file, const std::vector<std::string>& header,
             const std::vector<std::vector<double>>& rows) {
    write_table_csv(sc_.out_dir / file, header, rows);
    files_.push_back(file);
  }
  void matrix(const std::string& file, const std::string& corner, const std::vector<double>& cols,
              const std::vector<double>& rows, const std::vector<std::vector<double>>& values) {
    write_matrix_csv(sc_.out_dir / file, corner, cols, rows, values);
    files_.push_back(file);
  }
  void bands(const std::string& file, const MathieuBand& band) {
    write_band_csv(sc_.out_dir / file, band);
    files_.push_back(file);
  }
  void run(json entry) { meta_["runs"].push_back(std::move(entry)); }
  json& meta() { return meta_; }

  std::vector<std::string> finish() {
    const std::string sidecar = name_ + ".meta.json";
    meta_["files"] = files_;
    write_metadata(sc_.out_dir / sidecar, meta_);
    files_.push_back(sidecar);
    return files_;
  }

private:
  const Scenario& sc_;
  std::string name_;
  json meta_;
  std::vector<std::string> files_;
};

PhaseSpaceGrid grid_for(const Scenario& sc, const GaussianMomentum& beam, double eps) {
  if (sc.wp_min)
    return PhaseSpaceGrid(sc.n_theta, sc.n_wp, *sc.wp_min, *sc.wp_max);
  return default_grid(beam, eps, sc.n_theta, sc.n_wp);
}

Curve marginal_curve(const std::vector<double>& nodes, const std::vector<double>& values) {
  Curve c(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k)
    c[k] = {nodes[k], values[k]};
  return c;
}

json diagnostics_json(const WignerDiagnostics& d, const PhaseSpaceField& w, double mass0) {
  return {{"recoil_truncation", d.recoil_truncation},
          {"mathieu_truncation", d.mathieu_truncation},
          {"imaginary_residue", d.imaginary_residue},
          {"unitarity_defect", d.unitarity_defect},
          {"edge_term", d.edge_term},
          {"mass_drift", std::abs(total_mass(w) - mass0)}};
}

// Quantum and classical evolution of one configuration at several times.
struct PairRun {
  std::vector<PhaseSpaceField> wigner;
  std::vector<PhaseSpaceField> classical;
  json meta;
};

PairRun evolve_pair(const Scenario& sc, const ModelConfig& model, const GaussianMomentum& beam,
                    const std::vector<double>& times, std::ostream& log) {
  const PhaseSpaceGrid grid = grid_for(sc, beam, model.epsilon);
  log << "  alpha=" << model.alpha << " dwp=" << beam.spread() << " wp_bar=" << beam.mean() << ": " << times.size()
      << " time(s) on " << grid.n_theta() << "x" << grid.n_wp() << '\n';
  const WignerPropagator prop(beam, grid, model);
  const double mass0 = total_mass(initial_field(beam, grid, FieldKind::quantum));
  PairRun out;
  out.meta = {{"alpha", model.alpha},
              {"epsilon", model.epsilon},
              {"wp_bar", beam.mean()},
              {"dwp", beam.spread()},
              {"grid", grid_json(grid)},
              {"recoil_truncation", prop.recoil_truncation()},
              {"mathieu_truncation", prop.mathieu_truncation()},
              {"times", times},
              {"diagnostics", json::array()}};
  for (double tau : times) {
    WignerDiagnostics diag;
    out.wigner.push_back(prop.evolve(tau, &diag));
    out.classical.push_back(evolve_classical(beam, grid, tau, model.epsilon));
    json d = diagnostics_json(diag, out.wigner.back(), mass0);
    d["tau"] = tau;
    d["classical_mass_drift"] = std::abs(total_mass(out.classical.back()) - mass0);
    out.meta["diagnostics"].push_back(std::move(d));
  }
  return out;
}

ModelConfig with_alpha(const ModelConfig& base, double alpha) {
  ModelConfig m = base;
  m.alpha = alpha;
  return m;
}

// ---- commands -------------------------------------------------------------

void cmd_bands(const Scenario& sc, Output& out, std::ostream& log) {
  const ModelConfig& m = sc.model;
  const int s_max = m.recoil_truncation.value_or(8);
  const int R = m.mathieu_truncation.value_or(mathieu_truncation_for(m.alpha, s_max));
  log << "bands: nu=" << sc.nu << " alpha=" << m.alpha << " R=" << R << '\n';
  const MathieuBand band = solve_bands(sc.nu, m.alpha, R, m.epsilon);
  out.bands("bands.csv", band);
  std::vector<std::vector<double>> rows;
  json unitarity = json::array();
  for (double tau : m.times) {
    const ScatteringTable t = scattering_amplitudes(band, tau, std::min(s_max, R - 2));
    for (int s = -t.s_max; s <= t.s_max; ++s) {
      const auto a = t.at(s);
      rows.push_back({tau, static_cast<double>(s), a.real(), a.imag(), std::norm(a)});
    }
    unitarity.push_back({{"tau", tau}, {"norm_defect", std::abs(1.0 - t.norm())}});
  }
  if (!rows.empty())
    out.table("amplitudes.csv", {"tau", "s", "re", "im", "abs2"}, rows);
  out.run({{"nu", sc.nu}, {"alpha", m.alpha}, {"mathieu_truncation", R}, {"recoil_truncation", s_max},
           {"unitarity", unitarity}});
}

void cmd_evolve(const Scenario& sc, Output& out, std::ostream& log) {
  const GaussianMomentum beam(sc.wp_bar, sc.dwp);
  log << "evolve:\n";
  PairRun run = evolve_pair(sc, sc.model, beam, sc.model.times, log);
  std::vector<std::vector<double>> summary;
  for (std::size_t k = 0; k < sc.model.times.size(); ++k) {
    const auto& w = run.wigner[k];
    const auto& f = run.classical[k];
    const std::string idx = std::to_string(k);
    out.field("wigner_t" + idx + ".csv", w);
    out.field("classical_t" + idx + ".csv", f);
    const Marginals mw = marginals(w), mf = marginals(f);
    const auto& g = w.grid();
    out.curve("marginal_wp_wigner_t" + idx + ".csv", "wp", "p", marginal_curve(g.wp_nodes(), mw.p_wp));
    out.curve("marginal_wp_classical_t" + idx + ".csv", "wp", "p", marginal_curve(g.wp_nodes(), mf.p_wp));
    out.curve("marginal_theta_wigner_t" + idx + ".csv", "theta", "p", marginal_curve(g.theta_nodes(), mw.p_theta));
    out.curve("marginal_theta_classical_t" + idx + ".csv", "theta", "p",
              marginal_curve(g.theta_nodes(), mf.p_theta));
    summary.push_back({sc.model.times[k], total_mass(w), total_mass(f), distance_dcl(w, f),
                       run.meta["diagnostics"][k]["imaginary_residue"].get<double>(), w.min_value()});
  }
  out.table("evolve_summary.csv", {"tau", "mass_wigner", "mass_classical", "d_cl", "imaginary_residue", "min_wigner"},
            summary);
  out.run(run.meta);
}

void cmd_distance(const Scenario& sc, Output& out, std::ostream& log) {
  const GaussianMomentum beam(sc.wp_bar, sc.dwp);
  log << "distance:\n";
  PairRun run = evolve_pair(sc, sc.model, beam, sc.model.times, log);
  Curve c;
  for (std::size_t k = 0; k < sc.model.times.size(); ++k)
    c.emplace_back(sc.model.times[k], distance_dcl(run.wigner[k], run.classical[k]));
  out.curve("distance.csv", "tau", "d_cl", c);
  out.run(run.meta);
}

void cmd_gain(const Scenario& sc, Output& out, std::ostream& log) {
  const ModelConfig& m = sc.model;
  const int M = m.series_terms;
  if (sc.gain_kind == "numeric") {
    const GaussianMomentum beam(sc.wp_bar, sc.dwp);
    log << "gain (numeric):\n";
    std::vector<double> times = m.times;
    PairRun run = evolve_pair(sc, m, beam, times, log);
    const auto w0f = initial_field(beam, run.wigner.front().grid(), FieldKind::quantum);
    Curve q, c, s;
    for (std::size_t k = 0; k < times.size(); ++k) {
      q.emplace_back(times[k], gain_from_momentum(run.wigner[k], w0f, m.chi));
      c.emplace_back(times[k], gain_from_momentum(run.classical[k], w0f, m.chi));
      if (times[k] > 0.0)
        s.emplace_back(times[k], gain_small_signal(beam, times[k], m.alpha, m.chi, M));
    }
    out.curve("gain_quantum.csv", "tau", "G", q);
    out.curve("gain_classical.csv", "tau", "G", c);
    if (!s.empty())
      out.curve("gain_small_signal.csv", "tau", "G", s);
    out.run(run.meta);
    return;
  }
  const double tau = m.times.front();
  Curve curve;
  const auto xs = linspace(sc.x_min, sc.x_max, sc.samples);
  if (sc.gain_kind == "cold") {
    for (double x : xs)
      curve.emplace_back(x, gain_cold(x / tau, tau, m.alpha, m.chi, M));
    out.curve("gain_cold.csv", "wp_bar*tau", "G", curve);
  } else if (sc.gain_kind == "small_signal") {
    for (double x : xs)
      curve.emplace_back(x, gain_small_signal(GaussianMomentum(x / tau, sc.dwp), tau, m.alpha, m.chi, M));
    out.curve("gain_small_signal.csv", "wp_bar*tau", "G", curve);
  } else {
    const double ratio = 1.0 / (2.0 * std::sqrt(m.alpha) * sc.dwp);
    if (!warm_limit_valid(GaussianMomentum(0.0, sc.dwp), tau))
      log << "warning: dwp*tau = " << sc.dwp * tau << " < 5, the warm-beam limit is not reached\n";
    for (double x : xs)
      curve.emplace_back(x, gain_warm(GaussianMomentum(x * sc.dwp, sc.dwp), tau, m.chi, ratio, M));
    out.curve("gain_warm.csv", "wp_bar/dwp", "G", curve);
  }
  out.run({{"gain_kind", sc.gain_kind}, {"tau", tau}, {"series_terms", M}, {"alpha", m.alpha}});
}

void cmd_estimate(const Scenario& sc, Output& out, std::ostream& log) {
  const Timescales t = estimate_timescales(*sc.lab);
  const double chi = compute_chi(*sc.lab);
  log << "T_sc = " << t.space_charge << " s, T_se = " << t.spontaneous_emission << " s, chi = " << chi << '\n';
  out.table("estimate.csv", {"T_sc", "T_se", "chi"}, {{t.space_charge, t.spontaneous_emission, chi}});
  out.run({{"T_sc", t.space_charge}, {"T_se", t.spontaneous_emission}, {"chi", chi}});
}

// ---- figure presets -------------------------------------------------------

void figure1(const Scenario&, Output& out, std::ostream& log) {
  const GaussianMomentum beam(pi, 0.1);
  const double tau = 0.01, eps = 1.0, theta = pi;
  const auto wps = linspace(pi - 0.5, pi + 0.5, 401);
  log << "figure 1: first-order corrections at theta=pi, tau=0.01\n";
  for (double alpha : {16.0, 100.0, 400.0}) {
    Curve c;
    for (double wp : wps)
      c.emplace_back(beam.relative_momentum(wp), w1_closed(theta, wp, tau, eps, beam, alpha));
    out.curve("fig1_w1_alpha" + tag(alpha) + ".csv", "xi", "W1", c);
  }
  Curve cl;
  for (double wp : wps)
    cl.emplace_back(beam.relative_momentum(wp), fcl1(theta, wp, tau, eps, beam));
  out.curve("fig1_fcl1.csv", "xi", "fcl1", cl);
  out.run({{"tau", tau}, {"epsilon", eps}, {"theta", theta}, {"wp_bar", pi}, {"dwp", 0.1}});
}

void figure2(const Scenario& sc, Output& out, std::ostream& log) {
  log << "figure 2: tau=pi\n";
  const std::vector<double> times = {pi};
  for (double dwp : {0.1, 1.0, 2.0}) {
    const GaussianMomentum beam(0.0, dwp);
    const std::string d = "_dwp" + tag(dwp);
    bool classical_done = false;
    for (double alpha : {1.0 / 3.0, 10.0}) {
      PairRun run = evolve_pair(sc, with_alpha(sc.model, alpha), beam, times, log);
      const auto& w = run.wigner.front();
      const auto& g = w.grid();
      out.field("fig2_wigner_alpha" + tag(alpha) + d + ".csv", w);
      out.curve("fig2_marginal_wigner_alpha" + tag(alpha) + d + ".csv", "wp", "p",
                marginal_curve(g.wp_nodes(), marginals(w).p_wp));
      if (!classical_done) {
        const auto& f = run.classical.front();
        out.field("fig2_classical" + d + ".csv", f);
        out.curve("fig2_marginal_classical" + d + ".csv", "wp", "p", marginal_curve(g.wp_nodes(), marginals(f).p_wp));
        const auto f0 = initial_field(beam, g, FieldKind::classical);
        out.curve("fig2_marginal_initial" + d + ".csv", "wp", "p", marginal_curve(g.wp_nodes(), marginals(f0).p_wp));
        classical_done = true;
      }
      out.run(run.meta);
    }
  }
}

void figure3(const Scenario& sc, Output& out, std::ostream& log) {
  log << "figure 3: W - f for alpha=10, dwp=2\n";
  const std::vector<double> times = {pi / 12.0, pi / 2.0, pi};
  const GaussianMomentum beam(0.0, 2.0);
  PairRun run = evolve_pair(sc, with_alpha(sc.model, 10.0), beam, times, log);
  for (std::size_t k = 0; k < times.size(); ++k) {
    PhaseSpaceField diff = run.wigner[k];
    auto dv = diff.values();
    const auto fv = run.classical[k].values();
    for (std::size_t q = 0; q < dv.size(); ++q)
      dv[q] -= fv[q];
    out.field("fig3_diff_tau" + tag(times[k]) + ".csv", diff);
  }
  out.run(run.meta);
}

const std::vector<std::pair<double, double>>& fig4_configs() {
  static const std::vector<std::pair<double, double>> c = {{1.0 / 3.0, 0.1}, {10.0, 0.1}, {1.0 / 3.0, 2.0}, {10.0, 2.0}};
  return c;
}

void figure4a(const Scenario& sc, Output& out, std::ostream& log) {
  log << "figure 4a: d_cl(tau)\n";
  const auto times = linspace(0.0, 2.0 * pi, 49);
  for (const auto& [alpha, dwp] : fig4_configs()) {
    PairRun run = evolve_pair(sc, with_alpha(sc.model, alpha), GaussianMomentum(0.0, dwp), times, log);
    Curve c;
    for (std::size_t k = 0; k < times.size(); ++k)
      c.emplace_back(times[k], distance_dcl(run.wigner[k], run.classical[k]));
    out.curve("fig4a_dcl_alpha" + tag(alpha) + "_dwp" + tag(dwp) + ".csv", "tau", "d_cl", c);
    run.meta.erase("diagnostics");
    out.run(run.meta);
  }
}

void figure4bc(const Scenario& sc, Output& out, std::ostream& log) {
  const auto alphas = logspace(0.1, 10.0, sc.map_points);
  const auto spreads = logspace(0.05, 2.0, sc.map_points);
  const std::vector<double> times = {pi / 2.0, pi};
  log << "figure 4bc: " << alphas.size() << "x" << spreads.size() << " map\n";
  std::vector<std::vector<double>> early(spreads.size(), std::vector<double>(alphas.size()));
  auto late = early;
  for (std::size_t r = 0; r < spreads.size(); ++r)
    for (std::size_t c = 0; c < alphas.size(); ++c) {
      PairRun run = evolve_pair(sc, with_alpha(sc.model, alphas[c]), GaussianMomentum(0.0, spreads[r]), times, log);
      early[r][c] = distance_dcl(run.wigner[0], run.classical[0]);
      late[r][c] = distance_dcl(run.wigner[1], run.classical[1]);
      run.meta.erase("diagnostics");
      out.run(run.meta);
    }
  out.matrix("fig4b_dcl_tau" + tag(pi / 2.0) + ".csv", "dwp\\alpha", alphas, spreads, early);
  out.matrix("fig4c_dcl_tau" + tag(pi) + ".csv", "dwp\\alpha", alphas, spreads, late);
}

void figure5(const Scenario&, Output& out, std::ostream& log) {
  log << "figure 5: cold and warm gain with lowest-order corrections\n";
  const double chi = 1.0;
  // cold beam: x = wp_bar tau, tau = 1, omega_r t = tau / (2 sqrt(alpha))
  const double tau_c = 1.0;
  const auto xs = linspace(-2.0 * pi, 2.0 * pi, 401);
  auto alpha_for = [](double tau, double wrt) { return std::pow(tau / (2.0 * wrt), 2); };
  double norm_c = 0.0;
  for (double x : xs)
    norm_c = std::max(norm_c, std::abs(gain_cold(x / tau_c, tau_c, 1.0, chi, 0)));
  Curve cold_cl;
  for (double x : xs)
    cold_cl.emplace_back(x, gain_cold(x / tau_c, tau_c, 1.0, chi, 0) / norm_c);
  out.curve("fig5_cold_classical.csv", "wp_bar*tau", "G", cold_cl);
  for (double wrt : {1.0, 2.0}) {
    Curve c;
    for (double x : xs)
      c.emplace_back(x, gain_cold(x / tau_c, tau_c, alpha_for(tau_c, wrt), chi, 1) / norm_c);
    out.curve("fig5_cold_wrt" + tag(wrt) + ".csv", "wp_bar*tau", "G", c);
  }
  // warm beam: dwp tau = 10, hbar k / dp = omega_r t / (dwp tau)
  const double dwp = 1.0, tau_w = 10.0;
  const auto ys = linspace(-5.0, 5.0, 401);
  double norm_w = 0.0;
  for (double y : ys)
    norm_w = std::max(norm_w, std::abs(gain_warm(GaussianMomentum(y * dwp, dwp), tau_w, chi, 0.0, 0)));
  Curve warm_cl;
  for (double y : ys)
    warm_cl.emplace_back(y, gain_warm(GaussianMomentum(y * dwp, dwp), tau_w, chi, 0.0, 0) / norm_w);
  out.curve("fig5_warm_classical.csv", "wp_bar/dwp", "G", warm_cl);
  for (double wrt : {3.0, 7.0}) {
    Curve c;
    for (double y : ys)
      c.emplace_back(y, gain_warm(GaussianMomentum(y * dwp, dwp), tau_w, chi, wrt / (dwp * tau_w), 1) / norm_w);
    out.curve("fig5_warm_wrt" + tag(wrt) + ".csv", "wp_bar/dwp", "G", c);
  }
  out.run({{"cold_tau", tau_c}, {"warm_tau", tau_w}, {"warm_dwp", dwp}, {"series_terms", 1}});
}

void figure6(const Scenario& sc, Output& out, std::ostream& log) {
  log << "figure 6: gain from mean momentum, wp_bar=1.6\n";
  const auto times = linspace(0.0, 4.0 * pi, 65);
  for (double dwp : {0.1, 2.0}) {
    const GaussianMomentum beam(1.6, dwp);
    bool classical_done = false;
    for (double alpha : {1.0, 10.0}) {
      PairRun run = evolve_pair(sc, with_alpha(sc.model, alpha), beam, times, log);
      const auto w0f = initial_field(beam, run.wigner.front().grid(), FieldKind::quantum);
      Curve q, c;
      for (std::size_t k = 0; k < times.size(); ++k) {
        q.emplace_back(times[k], gain_from_momentum(run.wigner[k], w0f, sc.model.chi));
        c.emplace_back(times[k], gain_from_momentum(run.classical[k], w0f, sc.model.chi));
      }
      out.curve("fig6_gain_quantum_alpha" + tag(alpha) + "_dwp" + tag(dwp) + ".csv", "tau", "G", q);
      if (!classical_done) {
        out.curve("fig6_gain_classical_dwp" + tag(dwp) + ".csv", "tau", "G", c);
        classical_done = true;
      }
      run.meta.erase("diagnostics");
      out.run(run.meta);
    }
  }
}

void cmd_figure(const Scenario& sc, Output& out, std::ostream& log) {
  if (sc.figure == "1")
    figure1(sc, out, log);
  else if (sc.figure == "2")
    figure2(sc, out, log);
  else if (sc.figure == "3")
    figure3(sc, out, log);
  else if (sc.figure == "4a")
    figure4a(sc, out, log);
  else if (sc.figure == "4bc")
    figure4bc(sc, out, log);
  else if (sc.figure == "5")
    figure5(sc, out, log);
  else
    figure6(sc, out, log);
}

} // namespace

RunReport run_scenario(const Scenario& sc, std::ostream& log) {
  RunReport report;
  try {
    sc.validate();
    const std::string name = sc.command == "figure" ? "figure" + sc.figure : sc.command;
    Output out(sc, name);
    if (sc.command == "bands")
      cmd_bands(sc, out, log);
    else if (sc.command == "evolve")
      cmd_evolve(sc, out, log);
    else if (sc.command == "distance")
      cmd_distance(sc, out, log);
    else if (sc.command == "gain")
      cmd_gain(sc, out, log);
    else if (sc.command == "estimate")
      cmd_estimate(sc, out, log);
    else
      cmd_figure(sc, out, log);
    report.files = out.finish();
  } catch (const ConfigError& e) {
    report.exit_code = kExitConfig;
    report.message = std::string("config error: ") + e.what();
  } catch (const DomainError& e) {
    report.exit_code = kExitConfig;
    report.message = std::string("invalid parameter: ") + e.what();
  } catch (const NumericError& e) {
    report.exit_code = kExitNumeric;
    report.message = std::string("numerical failure: ") + e.what();
  } catch (const std::exception& e) {
    report.exit_code = kExitNumeric;
    report.message = std::string("numerical failure: ") + e.what();
  }
  return report;
}

} // namespace felphase
