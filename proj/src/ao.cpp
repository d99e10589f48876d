#include "fluidmimo/ao.hpp"

#include <cmath>

#include "fluidmimo/errors.hpp"
#include "fluidmimo/random.hpp"

namespace fluidmimo {

namespace {

constexpr std::uint64_t kHeldoutStream = 0xa54ff53aULL;
constexpr std::uint64_t kSharedStream = 0x510e527fULL;
constexpr std::uint64_t kSwarmStream = 0x9b05688cULL;
constexpr std::uint64_t kInitStream = 0x1f83d9abULL;

PositionVector initial_point(const ApertureSpec& spec, const AoConfig& cfg, const std::optional<PositionVector>& start,
                             std::uint64_t side) {
  if (start) return project(start->coords(), spec);
  if (cfg.init == InitPolicy::Random) return sorted_uniform_random_init(spec, derive_key(cfg.master_seed, {kInitStream, side}));
  return uniform_init(spec);
}

double det_of(const PositionVector& p) { return determinant(build_correlation(p)); }

OptimizationTrace run_sca(const ApertureSpec& tx_spec, const ApertureSpec& rx_spec, const AoConfig& cfg) {
  PositionVector t = initial_point(tx_spec, cfg, cfg.tx_start, 0);
  PositionVector r = initial_point(rx_spec, cfg, cfg.rx_start, 1);
  OptimizationTrace trace{{}, t, r, false, 0};

  auto objective = [&](const PositionVector& a, const PositionVector& b) {
    trace.kernel_calls += 2;
    return log_det2(build_correlation(a)).value + log_det2(build_correlation(b)).value;
  };

  double previous = objective(t, r);
  trace.iterations.push_back({0, t, r, previous, 0.0, det_of(t), det_of(r), 0.0, 0.0, 0.0, 0.0});

  for (int k = 0; k < cfg.max_outer; ++k) {
    PgaResult tx = pga_solve(t, tx_spec, cfg.sca);
    trace.kernel_calls += tx.objective_evaluations + tx.gradient_evaluations;
    t = tx.position;
    if (!cfg.tx_only) {
      PgaResult rx = pga_solve(r, rx_spec, cfg.sca);
      trace.kernel_calls += rx.objective_evaluations + rx.gradient_evaluations;
      r = rx.position;
    }
    const double value = objective(t, r);
    trace.iterations.push_back({k + 1, t, r, value, 0.0, det_of(t), det_of(r), 0.0, 0.0, 0.0, 0.0});
    if (std::abs(value - previous) <= cfg.tolerance) {
      trace.converged = true;
      break;
    }
    previous = value;
  }
  trace.t_final = t;
  trace.r_final = r;
  return trace;
}

OptimizationTrace run_pso(const ApertureSpec& tx_spec, const ApertureSpec& rx_spec, const AoConfig& cfg) {
  PositionVector t = initial_point(tx_spec, cfg, cfg.tx_start, 0);
  PositionVector r = initial_point(rx_spec, cfg, cfg.rx_start, 1);
  OptimizationTrace trace{{}, t, r, false, 0};

  const ChannelSampleSet heldout = sample_gaussian_set(rx_spec.count, tx_spec.count, cfg.eval_samples,
                                                       derive_key(cfg.master_seed, {kHeldoutStream}));
  auto heldout_capacity = [&](const PositionVector& a, const PositionVector& b) {
    trace.kernel_calls += heldout.size();
    return ergodic_capacity(a, b, cfg.snr, heldout).mean_bps_hz;
  };

  double previous = heldout_capacity(t, r);
  trace.iterations.push_back({0, t, r, previous, previous, det_of(t), det_of(r), 0.0, 0.0, 0.0, 0.0});

  for (int k = 0; k < cfg.max_outer; ++k) {
    const ChannelSampleSet shared = sample_gaussian_set(rx_spec.count, tx_spec.count, cfg.opt_samples,
                                                        derive_key(cfg.master_seed, {kSharedStream, static_cast<std::uint64_t>(k)}));
    AoIterate it{k + 1, t, r, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0};

    SideCapacity tx_fit(Side::Tx, r, cfg.snr, shared);
    it.shared_before = tx_fit.mean(t.coords());
    SwarmConfig swarm = cfg.swarm;
    swarm.seed = derive_key(cfg.master_seed, {kSwarmStream, static_cast<std::uint64_t>(k), 0});
    PsoResult tx = pso_solve([&](std::span<const double> x) { return tx_fit.mean(x); }, tx_spec, swarm, t);
    trace.kernel_calls += tx_fit.kernel_calls();
    t = tx.position;
    it.shared_after_tx = tx.fitness;

    if (!cfg.tx_only) {
      SideCapacity rx_fit(Side::Rx, t, cfg.snr, shared);
      it.shared_rx_start = rx_fit.mean(r.coords());
      swarm.seed = derive_key(cfg.master_seed, {kSwarmStream, static_cast<std::uint64_t>(k), 1});
      PsoResult rx = pso_solve([&](std::span<const double> x) { return rx_fit.mean(x); }, rx_spec, swarm, r);
      trace.kernel_calls += rx_fit.kernel_calls();
      r = rx.position;
      it.shared_after_rx = rx.fitness;
    } else {
      it.shared_rx_start = it.shared_after_tx;
      it.shared_after_rx = it.shared_after_tx;
    }

    it.t = t;
    it.r = r;
    it.objective = it.shared_after_rx;
    it.heldout_objective = heldout_capacity(t, r);
    it.det_rt = det_of(t);
    it.det_rr = det_of(r);
    trace.iterations.push_back(it);

    if (std::abs(it.heldout_objective - previous) <= cfg.tolerance) {
      trace.converged = true;
      break;
    }
    previous = it.heldout_objective;
  }
  trace.t_final = t;
  trace.r_final = r;
  return trace;
}

}  // namespace

void AoConfig::validate() const {
  if (max_outer < 1) throw InvalidArgument("AoConfig: max_outer must be >= 1");
  if (!(tolerance > 0.0)) throw InvalidArgument("AoConfig: tolerance must be > 0");
  if (opt_samples < 1 || eval_samples < 1) throw InvalidArgument("AoConfig: sample counts must be >= 1");
  swarm.validate();
  sca.validate();
}

OptimizationTrace ao_optimize(const ApertureSpec& tx_spec, const ApertureSpec& rx_spec, const AoConfig& cfg) {
  cfg.validate();
  tx_spec.require_feasible();
  rx_spec.require_feasible();
  return cfg.solver == Solver::Sca ? run_sca(tx_spec, rx_spec, cfg) : run_pso(tx_spec, rx_spec, cfg);
}

CapacityEstimate evaluate_final(const PositionVector& t, const PositionVector& r, const SnrSpec& snr, int samples,
                                std::uint64_t seed) {
  const ChannelSampleSet set =
      sample_gaussian_set(static_cast<int>(r.size()), static_cast<int>(t.size()), samples, seed);
  return ergodic_capacity(t, r, snr, set);
}

}  // namespace fluidmimo
