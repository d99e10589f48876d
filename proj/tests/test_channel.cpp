#include <cmath>
#include <vector>

#include <doctest.h>

#include "fluidmimo/channel.hpp"
#include "fluidmimo/errors.hpp"
#include "fluidmimo/random.hpp"
#include "fluidmimo/special_functions.hpp"

using namespace fluidmimo;

TEST_CASE("sample sets are deterministic and unit variance") {
  const auto a = sample_gaussian_set(2, 2, 100000, 7);
  const auto b = sample_gaussian_set(2, 2, 3, 7);
  CHECK(a.samples[0] == b.samples[0]);
  CHECK(a.samples[2] == b.samples[2]);
  CHECK(a.samples[0] != sample_gaussian_set(2, 2, 1, 8).samples[0]);

  double power = 0.0;
  double re2 = 0.0;
  for (const auto& g : a.samples) {
    power += g.cwiseAbs2().sum();
    re2 += g.real().cwiseAbs2().sum();
  }
  const double entries = 4.0 * a.size();
  CHECK(power / entries == doctest::Approx(1.0).epsilon(0.02));
  CHECK(re2 / entries == doctest::Approx(0.5).epsilon(0.02));

  const auto scaled = sample_gaussian_set(2, 2, 20000, 7, 3.0);
  double p3 = 0.0;
  for (const auto& g : scaled.samples) p3 += g.cwiseAbs2().sum();
  CHECK(p3 / (4.0 * scaled.size()) == doctest::Approx(3.0).epsilon(0.03));

  CHECK_THROWS_AS(sample_gaussian_set(0, 2, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(sample_gaussian_set(2, 2, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(sample_gaussian_set(2, 2, 1, 1, 0.0), InvalidArgument);
}

TEST_CASE("Wishart log-determinant") {
  const auto set = sample_gaussian_set(4, 4, 10000, 3);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& g : set.samples) {
    const double v = std::log((g * g.adjoint()).determinant().real());
    sum += v;
    sum_sq += v * v;
  }
  const double s = static_cast<double>(set.size());
  const double mean = sum / s;
  const double se = std::sqrt((sum_sq / s - mean * mean) / (s - 1));
  double expected = 0.0;
  for (int m = 1; m <= 4; ++m) expected += digamma_int(m);
  CHECK(std::abs(mean - expected) <= 3.0 * se);
}

TEST_CASE("kronecker_channel") {
  const auto g = sample_gaussian_set(3, 2, 1, 5).samples[0];
  CHECK(kronecker_channel(Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Identity(2, 2), g) == g);
  CHECK(kronecker_channel(Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Zero(2, 2), g).norm() == 0.0);
  CHECK_THROWS_AS(kronecker_channel(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2), g),
                  InvalidArgument);

  // E[H H^H] = tr(R_T) I at identity correlations.
  const auto set = sample_gaussian_set(2, 2, 20000, 11);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(2, 2);
  for (const auto& s : set.samples)
    acc += [&] {
      const Eigen::MatrixXcd h = kronecker_channel(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2), s);
      return Eigen::MatrixXcd(h * h.adjoint());
    }();
  acc /= static_cast<double>(set.size());
  CHECK((acc - 2.0 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 0.06);
}

TEST_CASE("empirical correlation recovers the Kronecker model") {
  const PositionVector t({0.0, 0.2, 0.5}, 1.0, 0.1);
  const PositionVector r({0.0, 0.15, 0.45}, 1.0, 0.1);
  const auto rt = build_correlation(t);
  const auto rr = build_correlation(r);
  const Eigen::MatrixXd st = matrix_sqrt(rt);
  const Eigen::MatrixXd sr = matrix_sqrt(rr);
  const auto set = sample_gaussian_set(3, 3, 50000, 21);
  std::vector<Eigen::MatrixXcd> h;
  h.reserve(set.size());
  for (const auto& g : set.samples) h.push_back(kronecker_channel(sr, st, g));
  const auto et = empirical_correlation(h, Side::Tx);
  const auto er = empirical_correlation(h, Side::Rx);
  CHECK_FALSE(et.degenerate);
  CHECK((et.matrix - rt.entries()).cwiseAbs().maxCoeff() <= 0.02);
  CHECK((er.matrix - rr.entries()).cwiseAbs().maxCoeff() <= 0.02);
  for (int i = 0; i < 3; ++i) CHECK(et.matrix(i, i) == doctest::Approx(1.0));

  std::vector<Eigen::MatrixXcd> iid(set.samples.begin(), set.samples.begin() + 20000);
  CHECK((empirical_correlation(iid, Side::Tx).matrix - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 0.03);
}

TEST_CASE("empirical correlation input checks") {
  std::vector<Eigen::MatrixXcd> none;
  CHECK_THROWS_AS(empirical_correlation(none, Side::Tx), InvalidArgument);
  std::vector<Eigen::MatrixXcd> repeated(3, Eigen::MatrixXcd::Ones(2, 2));
  const auto e = empirical_correlation(repeated, Side::Tx);
  CHECK(e.degenerate);
  CHECK(e.matrix.allFinite());
}

TEST_CASE("physical channel") {
  const PositionVector zero1({0.0}, 1.0, 0.0);
  const PositionVector zero2({0.0, 0.0}, 1.0, 0.0);
  const auto one_path = draw_paths(1, 4);
  const auto h = physical_channel(zero2, zero2, one_path, 2.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(h(i, j) - one_path.gains[0] * std::sqrt(2.0)) <= 1e-14);
  CHECK_THROWS_AS(draw_paths(0, 1), InvalidArgument);

  const auto paths = draw_paths(300, 9);
  for (double a : paths.aod) CHECK((a >= 0.0 && a <= kPi));
  const auto frv = field_response(std::vector<double>{0.0, 0.3, 0.71}, paths.aoa[0]);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(frv(i)) == doctest::Approx(1.0));

  // Rank is bounded by the path count.
  const PositionVector t({0.0, 0.4, 0.9, 1.3}, 2.0, 0.1);
  const auto h2 = physical_channel(t, t, draw_paths(2, 1));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h2);
  CHECK(svd.singularValues()(2) <= 1e-10 * svd.singularValues()(0));
}

TEST_CASE("multipath model reproduces the Bessel correlation law") {
  const double d = 0.25;
  const PositionVector t({0.0, d}, 1.0, 0.0);
  std::vector<Eigen::MatrixXcd> draws;
  for (std::uint64_t s = 0; s < 2000; ++s) draws.push_back(physical_channel(t, t, draw_paths(5000, derive_key(17, {s}))));
  const double rho = empirical_correlation(draws, Side::Tx).matrix(0, 1);
  // J0(pi / 2) from the series; MC error of a correlation over 2000 draws is about 0.02.
  CHECK(rho == doctest::Approx(0.472001215768235).epsilon(0.06 / 0.472));
}
