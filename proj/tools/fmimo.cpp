// Experiment runner: one subcommand per scenario, CSV on stdout or --out.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fluidmimo/bench.hpp"
#include "fluidmimo/errors.hpp"

namespace {

using namespace fluidmimo;

struct Flags {
  std::vector<int> n;
  std::optional<int> m;
  std::vector<double> aperture;
  std::optional<double> dmin;
  std::vector<double> snr_db;
  std::string solver = "sca";
  std::vector<std::uint64_t> seeds;
  std::optional<int> samples;
  std::optional<int> opt_samples;
  std::optional<int> trials;
  std::optional<int> max_outer;
  std::optional<int> swarm;
  std::optional<int> iterations;
  std::vector<std::string> schemes;
  std::optional<double> spacing_step;
  std::string out;
};

Solver parse_solver(const std::string& s) { return s == "pso" ? Solver::Pso : Solver::Sca; }

Scheme ao_scheme(Solver s) { return s == Solver::Pso ? Scheme::AoPso : Scheme::AoSca; }

// Scenario defaults, then whatever the user set on top.
ExperimentSpec build_spec(Scenario scenario, const Flags& f) {
  ExperimentSpec spec;
  spec.scenario = scenario;
  const Solver solver = parse_solver(f.solver);
  spec.tx_only_solver = solver;

  switch (scenario) {
    case Scenario::Optimize:
      spec.snr_db = {30.0};
      spec.schemes = {Scheme::Iid, ao_scheme(solver), Scheme::TxOnly, Scheme::RandomBest, Scheme::Fpa};
      break;
    case Scenario::SpacingCurve:
      spec.n_values = {2};
      spec.snr_db = {10.0, 20.0, 30.0};
      spec.eval_samples = 3000;
      spec.schemes = {Scheme::Iid, Scheme::Fpa, Scheme::HighSnr};
      break;
    case Scenario::SweepSnr:
      spec.snr_db = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
      spec.schemes = {Scheme::Iid, ao_scheme(solver), Scheme::Fpa};
      break;
    case Scenario::SweepAperture:
      spec.snr_db = {20.0};
      spec.apertures = {1.5, 2.0, 2.5, 3.0, 4.0, 5.0};
      spec.schemes = {Scheme::Iid, ao_scheme(solver), Scheme::Fpa};
      break;
    case Scenario::SweepN:
      spec.snr_db = {20.0};
      spec.apertures = {3.0};
      spec.n_values = {2, 3, 4, 5, 6};
      spec.schemes = {Scheme::Iid, ao_scheme(solver), Scheme::Fpa};
      break;
    case Scenario::Convergence:
      spec.snr_db = {20.0};
      spec.schemes = {Scheme::AoPso, Scheme::AoSca};
      break;
  }

  if (!f.n.empty()) spec.n_values = f.n;
  if (f.m) spec.m_override = f.m;
  if (!f.aperture.empty()) spec.apertures = f.aperture;
  if (f.dmin) spec.d_min = *f.dmin;
  if (!f.snr_db.empty()) spec.snr_db = f.snr_db;
  if (!f.seeds.empty()) spec.seeds = f.seeds;
  if (f.samples) spec.eval_samples = *f.samples;
  if (f.opt_samples) spec.opt_samples = *f.opt_samples;
  if (f.trials) spec.random_trials = *f.trials;
  if (f.max_outer) spec.max_outer = *f.max_outer;
  if (f.swarm) spec.swarm.swarm_size = *f.swarm;
  if (f.iterations) spec.swarm.iterations = *f.iterations;
  if (f.spacing_step) spec.spacing_step = *f.spacing_step;
  if (!f.schemes.empty()) {
    spec.schemes.clear();
    for (const auto& s : f.schemes) spec.schemes.push_back(parse_scheme(s));
  }
  spec.output_path = f.out;
  return spec;
}

int run_validate(std::uint64_t seed) {
  bool ok = true;
  for (const auto& c : run_validation(seed)) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << c.measured << " expected=" << c.expected
              << " tol=" << c.tolerance << '\n';
    ok = ok && c.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fluid-antenna MIMO placement experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  Flags f;
  app.add_option("--n", f.n, "TX antenna counts (comma separated)")->delimiter(',');
  app.add_option("--m", f.m, "RX antenna count (defaults to N)");
  app.add_option("--aperture", f.aperture, "Aperture lengths in wavelengths")->delimiter(',');
  app.add_option("--dmin", f.dmin, "Minimum spacing in wavelengths");
  app.add_option("--snr-db", f.snr_db, "SNR points in dB")->delimiter(',');
  app.add_option("--solver", f.solver, "AO backend")->check(CLI::IsMember({"pso", "sca"}));
  app.add_option("--seed", f.seeds, "Master seeds")->delimiter(',');
  app.add_option("--samples", f.samples, "Monte-Carlo samples for evaluation");
  app.add_option("--opt-samples", f.opt_samples, "Shared samples per PSO outer iteration");
  app.add_option("--trials", f.trials, "Random placements for random_best");
  app.add_option("--max-outer", f.max_outer, "AO outer iteration cap");
  app.add_option("--swarm", f.swarm, "PSO swarm size");
  app.add_option("--iterations", f.iterations, "PSO iterations per half-step");
  app.add_option("--schemes", f.schemes, "Schemes to run")->delimiter(',');
  app.add_option("--spacing-step", f.spacing_step, "Spacing-curve grid step in wavelengths");
  app.add_option("--out", f.out, "CSV output path (stdout when omitted)");

  std::vector<std::pair<CLI::App*, Scenario>> scenarios;
  scenarios.emplace_back(app.add_subcommand("optimize", "Five-scheme comparison at one grid point"), Scenario::Optimize);
  scenarios.emplace_back(app.add_subcommand("spacing-curve", "Capacity versus uniform spacing"), Scenario::SpacingCurve);
  scenarios.emplace_back(app.add_subcommand("sweep-snr", "Capacity versus SNR"), Scenario::SweepSnr);
  scenarios.emplace_back(app.add_subcommand("sweep-aperture", "Capacity versus aperture"), Scenario::SweepAperture);
  scenarios.emplace_back(app.add_subcommand("sweep-n", "Capacity versus antenna count"), Scenario::SweepN);
  scenarios.emplace_back(app.add_subcommand("convergence", "Per-iteration AO traces"), Scenario::Convergence);
  CLI::App* validate = app.add_subcommand("validate", "Channel-model, gradient and Wishart self-checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(f.seeds.empty() ? 1 : f.seeds.front());
    for (const auto& [sub, scenario] : scenarios) {
      if (!sub->parsed()) continue;
      const ExperimentSpec spec = build_spec(scenario, f);
      const auto rows = run_scenario(spec);
      if (spec.output_path.empty()) write_csv(std::cout, rows);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "fmimo: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fmimo: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
