#include "fluidmimo/capacity.hpp"

#include <algorithm>
#include <cmath>

#include "fluidmimo/errors.hpp"
#include "fluidmimo/special_functions.hpp"

namespace fluidmimo {

namespace {

// log2 det(I + gamma K) for Hermitian PSD K.
double logdet2_identity_plus(const Eigen::MatrixXcd& k, double gamma) {
  Eigen::MatrixXcd a = gamma * k;
  a.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) {
    // Only reachable through round-off on a numerically indefinite K.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a, Eigen::EigenvaluesOnly);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) sum += std::log2(std::max(eig.eigenvalues()(i), 1e-300));
    return sum;
  }
  double sum = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) sum += std::log2(l(i, i).real());
  return 2.0 * sum;
}

CapacityEstimate summarize(double sum, double sum_sq, std::size_t count) {
  CapacityEstimate est;
  est.sample_count = static_cast<int>(count);
  const double n = static_cast<double>(count);
  est.mean_bps_hz = sum / n;
  if (count > 1) {
    const double var = std::max(0.0, (sum_sq - n * est.mean_bps_hz * est.mean_bps_hz) / (n - 1.0));
    est.mc_std_error = std::sqrt(var / n);
  }
  return est;
}

}  // namespace

SnrSpec::SnrSpec(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("SnrSpec: gamma must be positive and finite");
}

SnrSpec SnrSpec::from_db(double db) { return SnrSpec(std::pow(10.0, db / 10.0)); }

double SnrSpec::db() const { return 10.0 * std::log10(gamma_); }

double instantaneous_mi(const Eigen::MatrixXcd& h, double gamma) {
  if (h.rows() <= h.cols()) return logdet2_identity_plus(h * h.adjoint(), gamma);
  return logdet2_identity_plus(h.adjoint() * h, gamma);
}

CapacityEstimate ergodic_capacity(const Eigen::MatrixXd& sqrt_rt, const Eigen::MatrixXd& sqrt_rr, const SnrSpec& snr,
                                  const ChannelSampleSet& samples) {
  if (samples.size() == 0) throw InvalidArgument("ergodic_capacity: empty sample set");
  if (sqrt_rt.rows() != samples.cols || sqrt_rr.rows() != samples.rows)
    throw InvalidArgument("ergodic_capacity: sample dimensions do not match positions");
  // Sequential accumulation in sample order keeps results reproducible.
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& g : samples.samples) {
    const double mi = instantaneous_mi(kronecker_channel(sqrt_rr, sqrt_rt, g), snr.gamma());
    sum += mi;
    sum_sq += mi * mi;
  }
  return summarize(sum, sum_sq, samples.size());
}

CapacityEstimate ergodic_capacity(const PositionVector& t, const PositionVector& r, const SnrSpec& snr,
                                  const ChannelSampleSet& samples) {
  if (static_cast<Eigen::Index>(t.size()) != samples.cols || static_cast<Eigen::Index>(r.size()) != samples.rows)
    throw InvalidArgument("ergodic_capacity: sample dimensions do not match positions");
  return ergodic_capacity(matrix_sqrt(build_correlation(t)), matrix_sqrt(build_correlation(r)), snr, samples);
}

CapacityEstimate iid_capacity(int n, int m, const SnrSpec& snr, const ChannelSampleSet& samples) {
  return ergodic_capacity(Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Identity(m, m), snr, samples);
}

double wishart_constant(int n) {
  double sum = 0.0;
  for (int m = 1; m <= n; ++m) sum += digamma_int(m);
  return sum / kLn2;
}

double high_snr_capacity(const PositionVector& t, const PositionVector& r, const SnrSpec& snr) {
  if (t.size() != r.size())
    throw UnsupportedConfiguration("high_snr_capacity: requires equal antenna counts (N == M)");
  const int n = static_cast<int>(t.size());
  return n * std::log2(snr.gamma()) + log_det2(build_correlation(t)).value + log_det2(build_correlation(r)).value +
         wishart_constant(n);
}

double low_snr_capacity(int n, int m, const SnrSpec& snr) { return n * m * snr.gamma() / kLn2; }

double capacity_loss(const PositionVector& t, const PositionVector& r) {
  const double loss = -log_det2(build_correlation(t)).value - log_det2(build_correlation(r)).value;
  return std::max(0.0, loss);
}

SideCapacity::SideCapacity(Side optimized, const PositionVector& fixed, const SnrSpec& snr,
                           const ChannelSampleSet& samples)
    : gamma_(snr.gamma()) {
  const Eigen::Index fixed_dim = optimized == Side::Tx ? samples.rows : samples.cols;
  if (static_cast<Eigen::Index>(fixed.size()) != fixed_dim)
    throw InvalidArgument("SideCapacity: fixed-side positions do not match the sample dimensions");
  const Eigen::MatrixXcd root = matrix_sqrt(build_correlation(fixed)).cast<std::complex<double>>();
  fixed_factors_.reserve(samples.size());
  for (const auto& g : samples.samples) {
    if (optimized == Side::Tx) fixed_factors_.push_back(root * g);            // M x N
    else fixed_factors_.push_back(root * g.adjoint());                      // N x M
  }
}

CapacityEstimate SideCapacity::evaluate(std::span<const double> coords) const {
  if (fixed_factors_.empty()) throw InvalidArgument("SideCapacity: empty sample set");
  const Eigen::MatrixXcd r = build_correlation(coords).entries().cast<std::complex<double>>();
  if (r.rows() != fixed_factors_.front().cols())
    throw InvalidArgument("SideCapacity: position count does not match the sample dimensions");
  double sum = 0.0;
  double sum_sq = 0.0;
  Eigen::MatrixXcd ar;
  Eigen::MatrixXcd k;
  for (const auto& a : fixed_factors_) {
    ar.noalias() = a * r;
    k.noalias() = ar * a.adjoint();
    const double mi = logdet2_identity_plus(k, gamma_);
    sum += mi;
    sum_sq += mi * mi;
  }
  kernel_calls_ += fixed_factors_.size();
  return summarize(sum, sum_sq, fixed_factors_.size());
}

}  // namespace fluidmimo
