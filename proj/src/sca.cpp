#include "fluidmimo/sca.hpp"

#include <cmath>

#include "fluidmimo/correlation.hpp"
#include "fluidmimo/errors.hpp"
#include "fluidmimo/special_functions.hpp"

namespace fluidmimo {

void ScaConfig::validate() const {
  if (inner_iterations < 1) throw InvalidArgument("ScaConfig: inner_iterations must be >= 1");
  if (!(initial_step > 0.0)) throw InvalidArgument("ScaConfig: initial_step must be > 0");
  if (!(shrink > 0.0 && shrink < 1.0)) throw InvalidArgument("ScaConfig: shrink must lie in (0, 1)");
  if (max_backtracks < 0) throw InvalidArgument("ScaConfig: max_backtracks must be >= 0");
}

Eigen::VectorXd logdet_gradient(std::span<const double> coords) {
  const CorrelationMatrix r = build_correlation(coords);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r.entries());
  const double smallest = eig.eigenvalues().minCoeff();
  if (smallest < kSingularityFloor)
    throw SingularCorrelation("logdet_gradient: correlation matrix is numerically singular", smallest);
  const Eigen::MatrixXd inv =
      eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();

  const auto n = static_cast<Eigen::Index>(coords.size());
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double diff = coords[i] - coords[j];
      const double sgn = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
      acc += inv(i, j) * bessel_j1(kTwoPi * std::abs(diff)) * sgn;
    }
    grad(i) = -(2.0 * kTwoPi / kLn2) * acc;
  }
  return grad;
}

PgaResult pga_solve(const PositionVector& p0, const ApertureSpec& spec, const ScaConfig& cfg) {
  cfg.validate();
  spec.require_feasible();
  if (static_cast<int>(p0.size()) != spec.count)
    throw InvalidArgument("pga_solve: initial point size does not match the aperture spec");

  PgaResult out{project(p0.coords(), spec), {}, 0, 0};
  LogDet current = log_det2(build_correlation(out.position));
  ++out.objective_evaluations;
  out.trace.push_back(current.value);

  std::vector<double> candidate(p0.size());
  for (int iter = 0; iter < cfg.inner_iterations; ++iter) {
    Eigen::VectorXd grad;
    try {
      grad = logdet_gradient(out.position);
    } catch (const SingularCorrelation&) {
      break;
    }
    ++out.gradient_evaluations;
    if (grad.cwiseAbs().maxCoeff() == 0.0) break;

    bool accepted = false;
    double eta = cfg.initial_step;
    for (int bt = 0; bt <= cfg.max_backtracks; ++bt, eta *= cfg.shrink) {
      for (std::size_t i = 0; i < candidate.size(); ++i) candidate[i] = out.position[i] + eta * grad(static_cast<Eigen::Index>(i));
      PositionVector next = project(candidate, spec);
      const LogDet f = log_det2(build_correlation(next));
      ++out.objective_evaluations;
      if (!f.clamped && f.value > current.value) {
        out.position = std::move(next);
        current = f;
        out.trace.push_back(f.value);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return out;
}

}  // namespace fluidmimo
