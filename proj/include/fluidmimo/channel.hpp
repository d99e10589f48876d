#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fluidmimo/correlation.hpp"

namespace fluidmimo {

/// A reusable batch of i.i.d. CN(0, gain) matrices {G_s}, shared across all
/// candidate positions evaluated against it.
///
/// Sample s is drawn from its own stream keyed by (seed, s), so a batch is a
/// pure function of (rows, cols, count, seed, gain).
struct ChannelSampleSet {
  Eigen::Index rows = 0;  // M (receive side)
  Eigen::Index cols = 0;  // N (transmit side)
  std::uint64_t seed = 0;
  double gain = 1.0;
  std::vector<Eigen::MatrixXcd> samples;

  std::size_t size() const noexcept { return samples.size(); }
};

ChannelSampleSet sample_gaussian_set(int m, int n, int count, std::uint64_t seed, double gain = 1.0);

/// H = sqrt_rr * G * sqrt_rt.
Eigen::MatrixXcd kronecker_channel(const Eigen::MatrixXd& sqrt_rr, const Eigen::MatrixXd& sqrt_rt,
                                   const Eigen::MatrixXcd& g);

/// Scattering paths for the geometric multipath model.
struct PathParameters {
  std::vector<double> aod;  // radians, uniform on [0, pi]
  std::vector<double> aoa;  // radians, uniform on [0, pi]
  std::vector<std::complex<double>> gains;  // CN(0, 1)
  std::uint64_t seed = 0;

  std::size_t path_count() const noexcept { return gains.size(); }
};

PathParameters draw_paths(int path_count, std::uint64_t seed);

/// Field-response vector exp(j 2 pi p_i cos(angle)), positions in wavelengths.
Eigen::VectorXcd field_response(std::span<const double> positions, double angle);

/// H = sqrt(gain / L) sum_l g_l b(aoa_l, r) a(aod_l, t)^H, an M x N matrix.
Eigen::MatrixXcd physical_channel(const PositionVector& t, const PositionVector& r,
                                  const PathParameters& paths, double gain = 1.0);

enum class Side { Tx, Rx };

struct EmpiricalCorrelation {
  Eigen::MatrixXd matrix;   // real part, normalized to unit diagonal
  bool degenerate = false;  // some element had zero sample variance
};

/// Sample covariance across the chosen side's antenna index, averaged over
/// the other side's index and normalized to unit diagonal. Requires at least
/// two samples of equal shape.
EmpiricalCorrelation empirical_correlation(std::span<const Eigen::MatrixXcd> samples, Side side);

}  // namespace fluidmimo
