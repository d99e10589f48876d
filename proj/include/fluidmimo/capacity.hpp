#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "fluidmimo/channel.hpp"
#include "fluidmimo/correlation.hpp"

namespace fluidmimo {

/// Per-stream SNR gamma = P / (N sigma^2). The dB form is 10 log10(gamma).
class SnrSpec {
public:
  /// Throws InvalidArgument unless gamma > 0 and finite.
  explicit SnrSpec(double gamma);
  static SnrSpec from_db(double db);

  double gamma() const noexcept { return gamma_; }
  double db() const;

private:
  double gamma_;
};

struct CapacityEstimate {
  double mean_bps_hz = 0.0;
  double mc_std_error = 0.0;
  int sample_count = 0;
};

/// log2 det(I + gamma H H^H), factored on the smaller side of H.
double instantaneous_mi(const Eigen::MatrixXcd& h, double gamma);

/// Monte-Carlo ergodic capacity of H_s = R_R^{1/2} G_s R_T^{1/2} over `samples`.
CapacityEstimate ergodic_capacity(const PositionVector& t, const PositionVector& r, const SnrSpec& snr,
                                  const ChannelSampleSet& samples);

/// Same estimator with the correlation square roots supplied directly.
CapacityEstimate ergodic_capacity(const Eigen::MatrixXd& sqrt_rt, const Eigen::MatrixXd& sqrt_rr,
                                  const SnrSpec& snr, const ChannelSampleSet& samples);

/// i.i.d. bound: ergodic_capacity with identity correlations.
CapacityEstimate iid_capacity(int n, int m, const SnrSpec& snr, const ChannelSampleSet& samples);

/// N log2(gamma) + log2 det R_T + log2 det R_R + kappa_N. Requires N == M.
double high_snr_capacity(const PositionVector& t, const PositionVector& r, const SnrSpec& snr);

/// kappa_N = (1 / ln 2) sum_{m=1}^{N} psi(m).
double wishart_constant(int n);

/// N M gamma / ln 2.
double low_snr_capacity(int n, int m, const SnrSpec& snr);

/// -log2 det R_T - log2 det R_R, clamped at 0.
double capacity_loss(const PositionVector& t, const PositionVector& r);

/// Capacity as a function of one side's positions with the other side fixed,
/// evaluated on a shared sample set.
///
/// For the TX side the fixed part A_s = R_R^{1/2} G_s is precomputed and
/// det(I_M + gamma A_s R_T A_s^H) is evaluated per sample; the RX side uses
/// B_s = R_T^{1/2} G_s^H and det(I_N + gamma B_s R_R B_s^H), which is equal
/// by Sylvester's identity. No square root of the optimized side is needed.
class SideCapacity {
public:
  SideCapacity(Side optimized, const PositionVector& fixed, const SnrSpec& snr, const ChannelSampleSet& samples);

  /// Capacity at `coords` for the optimized side.
  CapacityEstimate evaluate(std::span<const double> coords) const;
  double mean(std::span<const double> coords) const { return evaluate(coords).mean_bps_hz; }

  /// Number of per-sample log-det kernels evaluated so far.
  std::uint64_t kernel_calls() const noexcept { return kernel_calls_; }
  std::size_t sample_count() const noexcept { return fixed_factors_.size(); }

private:
  double gamma_;
  std::vector<Eigen::MatrixXcd> fixed_factors_;
  mutable std::uint64_t kernel_calls_ = 0;
};

}  // namespace fluidmimo
