#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fluidmimo {

/// Slack allowed on the minimum-spacing constraint.
inline constexpr double kSpacingSlack = 1e-12;

/// Eigenvalues below this are clamped when taking log-determinants.
inline constexpr double kSingularityFloor = 1e-12;

/// Antenna coordinates in wavelengths on one linear aperture [0, aperture].
///
/// Coordinates are kept sorted, lie inside the aperture, and consecutive gaps
/// are at least d_min (up to kSpacingSlack). With d_min = 0 coincident
/// elements are allowed.
class PositionVector {
public:
  /// Throws InvalidArgument if the coordinates violate the invariants.
  PositionVector(std::vector<double> coords, double aperture, double d_min);

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  double aperture() const noexcept { return aperture_; }
  double d_min() const noexcept { return d_min_; }

  Eigen::VectorXd to_eigen() const;

  friend bool operator==(const PositionVector&, const PositionVector&) = default;

private:
  std::vector<double> coords_;
  double aperture_;
  double d_min_;
};

/// Real symmetric unit-diagonal matrix [R]_ij = J0(2 pi |p_i - p_j|).
class CorrelationMatrix {
public:
  /// Validating constructor: throws InvariantViolation unless the matrix is
  /// square, symmetric to 1e-14 and has a unit diagonal.
  static CorrelationMatrix from_entries(Eigen::MatrixXd entries);

  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

private:
  explicit CorrelationMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {}
  friend CorrelationMatrix build_correlation(std::span<const double> coords);

  Eigen::MatrixXd entries_;
};

CorrelationMatrix build_correlation(const PositionVector& p);

/// Same as above for raw coordinates (in wavelengths); no feasibility checks.
CorrelationMatrix build_correlation(std::span<const double> coords);

struct LogDet {
  double value = 0.0;     // log2 det with clamped eigenvalues
  bool clamped = false;   // some eigenvalue fell below kSingularityFloor
};

/// Base-2 log-determinant via symmetric eigendecomposition.
LogDet log_det2(const CorrelationMatrix& r);

/// Validates `entries` like CorrelationMatrix::from_entries first.
LogDet log_det2(const Eigen::MatrixXd& entries);

/// Symmetric PSD square root with negative eigenvalues clamped to zero.
Eigen::MatrixXd matrix_sqrt(const CorrelationMatrix& r);

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  double condition_number = 1.0;    // mu_1 / max(mu_N, floor)
};

Spectrum spectrum(const CorrelationMatrix& r);

/// det(R) computed from the same factorization as log_det2.
double determinant(const CorrelationMatrix& r);

}  // namespace fluidmimo
