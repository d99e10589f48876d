#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fluidmimo/feasibility.hpp"

namespace fluidmimo {

struct ScaConfig {
  int inner_iterations = 50;
  double initial_step = 0.02;  // wavelengths
  double shrink = 0.5;
  int max_backtracks = 20;

  void validate() const;
};

/// Gradient of log2 det R(p) with respect to the coordinates (wavelengths):
///   d/dp_n = -(4 pi / ln 2) sum_{j != n} [R^{-1}]_{nj} J1(2 pi |p_n - p_j|) sgn(p_n - p_j).
/// Throws SingularCorrelation when the smallest eigenvalue of R is below
/// kSingularityFloor.
Eigen::VectorXd logdet_gradient(std::span<const double> coords);
inline Eigen::VectorXd logdet_gradient(const PositionVector& p) { return logdet_gradient(p.coords()); }

struct PgaResult {
  PositionVector position;
  std::vector<double> trace;  // accepted objective values, starting at f(p0)
  std::uint64_t objective_evaluations = 0;
  std::uint64_t gradient_evaluations = 0;
};

/// Projected gradient ascent on f(p) = log2 det R(p) with backtracking.
///
/// Every inner iteration restarts at initial_step and shrinks the step until
/// f(project(p + eta grad)) > f(p). A candidate whose log-det hit the
/// singularity floor counts as a rejection. Stops early when no step within
/// max_backtracks improves f, or when the gradient cannot be formed.
PgaResult pga_solve(const PositionVector& p0, const ApertureSpec& spec, const ScaConfig& cfg);

}  // namespace fluidmimo
