#include "fluidmimo/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "fluidmimo/errors.hpp"
#include "fluidmimo/special_functions.hpp"

namespace fluidmimo {

PositionVector::PositionVector(std::vector<double> coords, double aperture, double d_min)
    : coords_(std::move(coords)), aperture_(aperture), d_min_(d_min) {
  if (!(aperture_ > 0.0) || !std::isfinite(aperture_))
    throw InvalidArgument("PositionVector: aperture must be positive and finite");
  if (!(d_min_ >= 0.0) || !std::isfinite(d_min_))
    throw InvalidArgument("PositionVector: d_min must be nonnegative and finite");
  if (coords_.empty()) throw InvalidArgument("PositionVector: at least one coordinate required");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double c = coords_[i];
    if (!std::isfinite(c) || c < 0.0 || c > aperture_)
      throw InvalidArgument("PositionVector: coordinate outside [0, aperture]");
    if (i > 0) {
      const double gap = c - coords_[i - 1];
      if (gap < 0.0) throw InvalidArgument("PositionVector: coordinates must be ascending");
      if (gap < d_min_ - kSpacingSlack)
        throw InvalidArgument("PositionVector: spacing below d_min");
    }
  }
}

Eigen::VectorXd PositionVector::to_eigen() const {
  return Eigen::Map<const Eigen::VectorXd>(coords_.data(), static_cast<Eigen::Index>(coords_.size()));
}

CorrelationMatrix CorrelationMatrix::from_entries(Eigen::MatrixXd entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    throw InvariantViolation("correlation matrix must be square and non-empty");
  const Eigen::Index n = entries.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (entries(i, i) != 1.0) throw InvariantViolation("correlation matrix must have a unit diagonal");
    for (Eigen::Index j = 0; j < i; ++j) {
      if (!std::isfinite(entries(i, j)) || std::abs(entries(i, j) - entries(j, i)) > 1e-14)
        throw InvariantViolation("correlation matrix must be symmetric");
    }
  }
  return CorrelationMatrix(std::move(entries));
}

CorrelationMatrix build_correlation(std::span<const double> coords) {
  const auto n = static_cast<Eigen::Index>(coords.size());
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = bessel_j0(kTwoPi * std::abs(coords[i] - coords[j]));
      r(i, j) = v;
      r(j, i) = v;
    }
  }
  return CorrelationMatrix(std::move(r));
}

CorrelationMatrix build_correlation(const PositionVector& p) { return build_correlation(p.coords()); }

LogDet log_det2(const CorrelationMatrix& r) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r.entries(), Eigen::EigenvaluesOnly);
  LogDet out;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    double mu = eig.eigenvalues()(i);
    if (mu < kSingularityFloor) {
      mu = kSingularityFloor;
      out.clamped = true;
    }
    out.value += std::log2(mu);
  }
  return out;
}

LogDet log_det2(const Eigen::MatrixXd& entries) { return log_det2(CorrelationMatrix::from_entries(entries)); }

double determinant(const CorrelationMatrix& r) { return std::exp2(log_det2(r).value); }

Eigen::MatrixXd matrix_sqrt(const CorrelationMatrix& r) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r.entries());
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd s = eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (s + s.transpose());
}

Spectrum spectrum(const CorrelationMatrix& r) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r.entries(), Eigen::EigenvaluesOnly);
  Spectrum out;
  out.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  out.condition_number = out.eigenvalues.front() / std::max(out.eigenvalues.back(), kSingularityFloor);
  return out;
}

}  // namespace fluidmimo
