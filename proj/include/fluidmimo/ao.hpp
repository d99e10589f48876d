#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fluidmimo/capacity.hpp"
#include "fluidmimo/feasibility.hpp"
#include "fluidmimo/pso.hpp"
#include "fluidmimo/sca.hpp"

namespace fluidmimo {

enum class Solver { Pso, Sca };

enum class InitPolicy { Uniform, Random };

struct AoConfig {
  int max_outer = 12;
  double tolerance = 1e-3;
  Solver solver = Solver::Sca;
  SnrSpec snr = SnrSpec::from_db(20.0);
  int opt_samples = 200;
  int eval_samples = 1500;
  std::uint64_t master_seed = 1;
  SwarmConfig swarm{};
  ScaConfig sca{};
  InitPolicy init = InitPolicy::Uniform;
  /// Only the TX side is optimized; RX stays at its initial placement.
  bool tx_only = false;
  /// Optional explicit starting points; override `init` when set.
  std::optional<PositionVector> tx_start;
  std::optional<PositionVector> rx_start;

  void validate() const;
};

/// One outer iteration. Entry 0 holds the initial point.
struct AoIterate {
  int k = 0;
  PositionVector t;
  PositionVector r;
  /// Solver-native objective: log2 det R_T + log2 det R_R for SCA; MC capacity
  /// on this iteration's shared sample set for PSO.
  double objective = 0.0;
  /// PSO only: capacity on the fixed held-out set of eval_samples draws.
  double heldout_objective = 0.0;
  double det_rt = 1.0;
  double det_rr = 1.0;
  /// PSO only: C(t_k, r_k), C(t_{k+1}, r_k), C(t_{k+1}, r_{k+1}) on the shared set.
  double shared_before = 0.0;
  double shared_after_tx = 0.0;
  double shared_after_rx = 0.0;
  /// C(t_{k+1}, r_k) again, but in the RX half-step's own determinant form.
  /// Equal to shared_after_tx up to rounding; the RX half-step is monotone
  /// against this value exactly.
  double shared_rx_start = 0.0;
};

struct OptimizationTrace {
  std::vector<AoIterate> iterations;
  PositionVector t_final;
  PositionVector r_final;
  bool converged = false;
  /// Capacity-kernel work: per-sample log-det evaluations for PSO, N x N
  /// log-det / gradient evaluations for SCA.
  std::uint64_t kernel_calls = 0;
};

/// Alternating TX/RX optimization with the configured backend.
///
/// PSO: each outer iteration k draws a fresh shared sample set keyed by
/// (master_seed, k), warm-starts the swarm with the incumbent and stops when
/// the held-out objective changes by at most `tolerance`.
/// SCA: runs projected gradient ascent on each side's log-det and stops on
/// the change of log2 det R_T + log2 det R_R. The SNR is not used.
OptimizationTrace ao_optimize(const ApertureSpec& tx_spec, const ApertureSpec& rx_spec, const AoConfig& cfg);

/// Capacity of (t, r) on a fresh sample set of `samples` draws keyed by seed.
CapacityEstimate evaluate_final(const PositionVector& t, const PositionVector& r, const SnrSpec& snr, int samples,
                                std::uint64_t seed);

}  // namespace fluidmimo
