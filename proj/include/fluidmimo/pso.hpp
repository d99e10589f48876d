#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fluidmimo/feasibility.hpp"

namespace fluidmimo {

struct SwarmConfig {
  int swarm_size = 20;
  int iterations = 60;
  double w_max = 0.9;
  double w_min = 0.4;
  double c1 = 1.5;
  double c2 = 1.5;
  std::uint64_t seed = 1;

  /// Throws InvalidArgument on out-of-range fields. iterations == 0 is
  /// allowed and returns the best initial particle.
  void validate() const;
};

/// Maps a feasible coordinate vector to a fitness value (higher is better).
using Fitness = std::function<double(std::span<const double>)>;

struct PsoResult {
  PositionVector position;
  double fitness;
  std::vector<double> best_history;  // global best after init and after each iteration
  std::uint64_t evaluations = 0;
};

/// Particle swarm maximization of `fitness` over the feasible set of `spec`.
///
/// Particles start from sorted uniform draws (particle 0 from `warm_start`
/// when given) with zero velocity. Each iteration applies the inertia-weighted
/// velocity update with w = w_max - (w_max - w_min) l / I, moves, projects
/// back onto the feasible set and re-evaluates. Personal and global bests are
/// updated after the whole swarm has been evaluated, in particle order, and
/// ties keep the incumbent. Non-finite fitness values rank as -infinity.
PsoResult pso_solve(const Fitness& fitness, const ApertureSpec& spec, const SwarmConfig& cfg,
                    const std::optional<PositionVector>& warm_start = std::nullopt);

}  // namespace fluidmimo
