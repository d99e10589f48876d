#include "fluidmimo/channel.hpp"

#include <cmath>
#include <iostream>

#include "fluidmimo/errors.hpp"
#include "fluidmimo/random.hpp"
#include "fluidmimo/special_functions.hpp"

namespace fluidmimo {

ChannelSampleSet sample_gaussian_set(int m, int n, int count, std::uint64_t seed, double gain) {
  if (m < 1 || n < 1 || count < 1)
    throw InvalidArgument("sample_gaussian_set: dimensions and count must be positive");
  if (!(gain > 0.0) || !std::isfinite(gain)) throw InvalidArgument("sample_gaussian_set: gain must be positive");

  ChannelSampleSet set;
  set.rows = m;
  set.cols = n;
  set.seed = seed;
  set.gain = gain;
  set.samples.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    KeyedRng rng(seed, {0x6a09e667ULL, static_cast<std::uint64_t>(s)});
    Eigen::MatrixXcd g(m, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < m; ++i) g(i, j) = rng.complex_normal(gain);
    set.samples.push_back(std::move(g));
  }
  return set;
}

Eigen::MatrixXcd kronecker_channel(const Eigen::MatrixXd& sqrt_rr, const Eigen::MatrixXd& sqrt_rt,
                                   const Eigen::MatrixXcd& g) {
  if (sqrt_rr.rows() != sqrt_rr.cols() || sqrt_rt.rows() != sqrt_rt.cols() || sqrt_rr.cols() != g.rows() ||
      g.cols() != sqrt_rt.rows())
    throw InvalidArgument("kronecker_channel: dimension mismatch");
  return sqrt_rr.cast<std::complex<double>>() * g * sqrt_rt.cast<std::complex<double>>();
}

PathParameters draw_paths(int path_count, std::uint64_t seed) {
  if (path_count < 1) throw InvalidArgument("draw_paths: path count must be positive");
  PathParameters paths;
  paths.seed = seed;
  paths.aod.resize(path_count);
  paths.aoa.resize(path_count);
  paths.gains.resize(path_count);
  KeyedRng rng(seed, {0xbb67ae85ULL});
  for (int l = 0; l < path_count; ++l) {
    paths.aod[l] = rng.uniform(0.0, kPi);
    paths.aoa[l] = rng.uniform(0.0, kPi);
    paths.gains[l] = rng.complex_normal(1.0);
  }
  return paths;
}

Eigen::VectorXcd field_response(std::span<const double> positions, double angle) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(positions.size()));
  const double k = kTwoPi * std::cos(angle);
  for (std::size_t i = 0; i < positions.size(); ++i) v(static_cast<Eigen::Index>(i)) = std::polar(1.0, k * positions[i]);
  return v;
}

Eigen::MatrixXcd physical_channel(const PositionVector& t, const PositionVector& r, const PathParameters& paths,
                                  double gain) {
  const std::size_t l_count = paths.path_count();
  if (l_count == 0) throw InvalidArgument("physical_channel: at least one path required");
  if (paths.aod.size() != l_count || paths.aoa.size() != l_count)
    throw InvalidArgument("physical_channel: inconsistent path parameters");

  const auto n = static_cast<Eigen::Index>(t.size());
  const auto m = static_cast<Eigen::Index>(r.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, n);
  Eigen::VectorXcd a(n);
  Eigen::VectorXcd gb(m);
  for (std::size_t l = 0; l < l_count; ++l) {
    const double kt = kTwoPi * std::cos(paths.aod[l]);
    const double kr = kTwoPi * std::cos(paths.aoa[l]);
    for (Eigen::Index i = 0; i < n; ++i) a(i) = std::polar(1.0, -kt * t[static_cast<std::size_t>(i)]);  // conj(a)
    for (Eigen::Index j = 0; j < m; ++j) gb(j) = paths.gains[l] * std::polar(1.0, kr * r[static_cast<std::size_t>(j)]);
    h.noalias() += gb * a.transpose();
  }
  return std::sqrt(gain / static_cast<double>(l_count)) * h;
}

EmpiricalCorrelation empirical_correlation(std::span<const Eigen::MatrixXcd> samples, Side side) {
  if (samples.size() < 2) throw InvalidArgument("empirical_correlation: at least two samples required");
  const Eigen::Index rows = samples.front().rows();
  const Eigen::Index cols = samples.front().cols();
  for (const auto& h : samples)
    if (h.rows() != rows || h.cols() != cols) throw InvalidArgument("empirical_correlation: inconsistent shapes");

  // Work with the chosen side's index as columns.
  auto oriented = [side](const Eigen::MatrixXcd& h) -> Eigen::MatrixXcd {
    return side == Side::Tx ? Eigen::MatrixXcd(h) : Eigen::MatrixXcd(h.transpose());
  };
  const Eigen::Index dim = side == Side::Tx ? cols : rows;
  const Eigen::Index other = side == Side::Tx ? rows : cols;
  const double count = static_cast<double>(samples.size());

  Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(other, dim);
  for (const auto& h : samples) mean += oriented(h);
  mean /= count;

  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& h : samples) {
    const Eigen::MatrixXcd centered = oriented(h) - mean;
    // sum over the other side's index of x_i x_i'^*
    cov.noalias() += centered.transpose() * centered.conjugate();
  }
  cov /= (count - 1.0) * static_cast<double>(other);

  EmpiricalCorrelation out;
  out.matrix = Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::VectorXd var = cov.diagonal().real();
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (!(var(i) > 1e-300)) out.degenerate = true;
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (i == j) continue;
      if (var(i) > 1e-300 && var(j) > 1e-300) out.matrix(i, j) = cov(i, j).real() / std::sqrt(var(i) * var(j));
      else out.matrix(i, j) = 0.0;
    }
  }
  if (out.degenerate)
    std::cerr << "warning: empirical_correlation: zero sample variance, affected entries set to 0\n";
  return out;
}

}  // namespace fluidmimo
