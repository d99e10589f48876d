#include "fluidmimo/pso.hpp"

#include <cmath>
#include <limits>

#include "fluidmimo/errors.hpp"
#include "fluidmimo/random.hpp"

namespace fluidmimo {

namespace {

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  double best_fitness;
};

double safe_eval(const Fitness& fitness, std::span<const double> x) {
  const double f = fitness(x);
  return std::isfinite(f) ? f : -std::numeric_limits<double>::infinity();
}

std::vector<double> to_vector(const PositionVector& p) { return {p.coords().begin(), p.coords().end()}; }

}  // namespace

void SwarmConfig::validate() const {
  if (swarm_size < 1) throw InvalidArgument("SwarmConfig: swarm_size must be >= 1");
  if (iterations < 0) throw InvalidArgument("SwarmConfig: iterations must be >= 0");
  if (!(w_max >= w_min) || !(w_min >= 0.0)) throw InvalidArgument("SwarmConfig: need w_max >= w_min >= 0");
  if (!(c1 >= 0.0) || !(c2 >= 0.0)) throw InvalidArgument("SwarmConfig: learning factors must be >= 0");
}

PsoResult pso_solve(const Fitness& fitness, const ApertureSpec& spec, const SwarmConfig& cfg,
                    const std::optional<PositionVector>& warm_start) {
  cfg.validate();
  spec.require_feasible();
  if (warm_start && static_cast<int>(warm_start->size()) != spec.count)
    throw InvalidArgument("pso_solve: warm start size does not match the aperture spec");

  const std::size_t dim = static_cast<std::size_t>(spec.count);
  std::vector<Particle> swarm(static_cast<std::size_t>(cfg.swarm_size));
  std::uint64_t evaluations = 0;

  for (std::size_t z = 0; z < swarm.size(); ++z) {
    Particle& p = swarm[z];
    if (z == 0 && warm_start) p.position = to_vector(project(warm_start->coords(), spec));
    else p.position = to_vector(sorted_uniform_random_init(spec, derive_key(cfg.seed, {0, z})));
    p.velocity.assign(dim, 0.0);
    p.best_position = p.position;
    p.best_fitness = safe_eval(fitness, p.position);
    ++evaluations;
  }

  std::size_t global = 0;
  for (std::size_t z = 1; z < swarm.size(); ++z)
    if (swarm[z].best_fitness > swarm[global].best_fitness) global = z;

  PsoResult result{PositionVector(swarm[global].best_position, spec.length, spec.d_min),
                   swarm[global].best_fitness, {swarm[global].best_fitness}, 0};

  std::vector<double> current_fitness(swarm.size());
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    const double w = cfg.w_max - (cfg.w_max - cfg.w_min) * iter / cfg.iterations;
    const std::vector<double> g = swarm[global].best_position;

    for (std::size_t z = 0; z < swarm.size(); ++z) {
      Particle& p = swarm[z];
      KeyedRng rng(cfg.seed, {1, static_cast<std::uint64_t>(iter), z});
      for (std::size_t i = 0; i < dim; ++i) {
        const double e1 = rng.uniform();
        const double e2 = rng.uniform();
        p.velocity[i] = w * p.velocity[i] + cfg.c1 * e1 * (p.best_position[i] - p.position[i]) +
                        cfg.c2 * e2 * (g[i] - p.position[i]);
        p.position[i] += p.velocity[i];
      }
      p.position = to_vector(project(p.position, spec));
      current_fitness[z] = safe_eval(fitness, p.position);
      ++evaluations;
    }

    for (std::size_t z = 0; z < swarm.size(); ++z) {
      Particle& p = swarm[z];
      if (current_fitness[z] > p.best_fitness) {
        p.best_fitness = current_fitness[z];
        p.best_position = p.position;
      }
    }
    for (std::size_t z = 0; z < swarm.size(); ++z)
      if (swarm[z].best_fitness > swarm[global].best_fitness) global = z;
    result.best_history.push_back(swarm[global].best_fitness);
  }

  result.position = PositionVector(swarm[global].best_position, spec.length, spec.d_min);
  result.fitness = swarm[global].best_fitness;
  result.evaluations = evaluations;
  return result;
}

}  // namespace fluidmimo
