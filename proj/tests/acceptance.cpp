// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Every run uses fixed seeds chosen before looking at the outcome.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fluidmimo/bench.hpp"
#include "fluidmimo/random.hpp"
#include "fluidmimo/special_functions.hpp"

using namespace fluidmimo;

namespace {

constexpr std::uint64_t kSeed = 1;
const double kDStar = 2.404825557695773 / kTwoPi;

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o = body();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.passed) ++failures;
  std::printf("[%s] %-3s %s: %s (%.1f s)\n", o.passed ? "PASS" : "FAIL", id.c_str(), title.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

PositionVector uniform_spacing(int n, double d) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = i * d;
  return PositionVector(x, std::max(d * (n - 1), 1.0), 0.0);
}

struct MeanSe {
  double mean;
  double se;
};

MeanSe mean_se(const std::vector<double>& v) {
  double s = 0.0;
  double s2 = 0.0;
  for (double x : v) {
    s += x;
    s2 += x * x;
  }
  const double n = static_cast<double>(v.size());
  const double m = s / n;
  return {m, std::sqrt(std::max(0.0, s2 / n - m * m) / (n - 1.0))};
}

// Independent J0/J1 oracle: 100-digit power series for small x, Hankel
// asymptotic series in 100-digit arithmetic beyond 20.
double oracle_j(int order, double xd) {
  using Big = boost::multiprecision::cpp_bin_float_100;
  const Big x(xd);
  if (xd <= 20.0) {
    const Big half = x / 2;
    Big term = order == 0 ? Big(1) : half;
    Big sum = term;
    for (int k = 1; k < 300; ++k) {
      term *= -(half * half) / (Big(k) * Big(k + order));
      sum += term;
    }
    return static_cast<double>(sum);
  }
  const Big mu = 4 * order * order;
  Big p = 1, q = 0, a = 1;
  for (int k = 1; k < 30; ++k) {
    a *= (mu - Big((2 * k - 1) * (2 * k - 1))) / (Big(k) * 8 * x);
    if (k % 2 == 1)
      q += (k % 4 == 1 ? 1 : -1) * a;
    else
      p += (k % 4 == 2 ? -1 : 1) * a;
  }
  const Big chi = x - (Big(order) / 2 + Big(1) / 4) * boost::multiprecision::acos(Big(-1));
  return static_cast<double>(sqrt(2 / (boost::multiprecision::acos(Big(-1)) * x)) * (p * cos(chi) - q * sin(chi)));
}

}  // namespace

int main() {
  const ApertureSpec six{2.0, 0.3, 6};
  const SnrSpec db20 = SnrSpec::from_db(20.0);
  const SnrSpec db30 = SnrSpec::from_db(30.0);

  // Shared results used by several criteria.
  AoConfig sca_cfg;
  sca_cfg.master_seed = kSeed;
  const OptimizationTrace sca = ao_optimize(six, six, sca_cfg);
  AoConfig pso_cfg = sca_cfg;
  pso_cfg.solver = Solver::Pso;
  pso_cfg.snr = db20;
  const OptimizationTrace pso = ao_optimize(six, six, pso_cfg);
  const PositionVector fpa = baseline_fpa(six);

  report("1", "optimal N=2 spacing", [] {
    ExperimentSpec spec;
    spec.scenario = Scenario::SpacingCurve;
    spec.n_values = {2};
    spec.snr_db = {30.0};
    spec.eval_samples = 3000;
    spec.seeds = {kSeed};
    spec.schemes = {Scheme::Iid, Scheme::Fpa};
    const auto start = std::chrono::steady_clock::now();
    const auto rows = run_scenario(spec);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const ResultRow* best = nullptr;
    double iid = 0.0;
    for (const auto& r : rows) {
      if (r.scheme == "iid") iid = r.capacity_mean;
      if (r.scheme == "fpa" && (!best || r.capacity_mean > best->capacity_mean)) best = &r;
    }
    const bool ok = std::abs(best->aperture - 0.3827) <= 0.01 && iid - best->capacity_mean <= 0.15 && secs <= 60.0;
    return Outcome{ok, fmt("argmax d=%.3f (0.3827 +/- 0.01), C_iid - C_peak=%.4f (<= 0.15), sweep %.1f s (<= 60)",
                           best->aperture, iid - best->capacity_mean, secs)};
  });

  report("2", "high-SNR approximation at d*", [&] {
    const auto t = uniform_spacing(2, kDStar);
    const auto set = sample_gaussian_set(2, 2, 10000, derive_key(kSeed, {2}));
    const double mc = ergodic_capacity(t, t, db30, set).mean_bps_hz;
    const double approx = high_snr_capacity(t, t, db30);
    return Outcome{std::abs(mc - approx) <= 0.2, fmt("MC=%.4f closed form=%.4f |diff|=%.4f (<= 0.2)", mc, approx,
                                                     std::abs(mc - approx))};
  });

  report("3", "low-SNR universality", [&] {
    const SnrSpec low(0.01);
    const auto set = sample_gaussian_set(6, 6, 20000, derive_key(kSeed, {3}));
    const auto rnd_t = sorted_uniform_random_init(six, derive_key(kSeed, {3, 0}));
    const auto rnd_r = sorted_uniform_random_init(six, derive_key(kSeed, {3, 1}));
    const double formula = low_snr_capacity(6, 6, low);
    const std::vector<double> c{ergodic_capacity(fpa, fpa, low, set).mean_bps_hz,
                                ergodic_capacity(rnd_t, rnd_r, low, set).mean_bps_hz,
                                ergodic_capacity(sca.t_final, sca.r_final, low, set).mean_bps_hz};
    double worst_formula = 0.0;
    for (double v : c) worst_formula = std::max(worst_formula, std::abs(v - formula) / formula);
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    const double spread = (*hi - *lo) / *lo;
    return Outcome{worst_formula <= 0.05 && spread <= 0.02,
                   fmt("fpa=%.4f random=%.4f optimized=%.4f formula=%.4f, worst rel. dev %.2f%% (<= 5%%), spread "
                       "%.2f%% (<= 2%%)",
                       c[0], c[1], c[2], formula, 100 * worst_formula, 100 * spread)};
  });

  report("4", "determinant targets", [&] {
    const double d_fpa = determinant(build_correlation(fpa));
    const double d_sca = sca.iterations.back().det_rt;
    const double d_pso = pso.iterations.back().det_rt;
    const auto in_band = [](double d) { return d >= 0.55 && d <= 0.62; };
    return Outcome{std::abs(d_fpa - 0.015) <= 0.005 && in_band(d_sca) && in_band(d_pso),
                   fmt("FPA %.5f (0.015 +/- 0.005), AO-SCA %.4f, AO-PSO %.4f ([0.55, 0.62])", d_fpa, d_sca, d_pso)};
  });

  report("5", "capacity-loss ledger", [&] {
    const double loss_fpa = capacity_loss(fpa, fpa);
    const double loss_opt = capacity_loss(sca.t_final, sca.r_final);
    const auto set = sample_gaussian_set(6, 6, 1500, derive_key(kSeed, {5}));
    const double gap =
        iid_capacity(6, 6, db30, set).mean_bps_hz - ergodic_capacity(fpa, fpa, db30, set).mean_bps_hz;
    return Outcome{std::abs(loss_fpa - 12.2) <= 0.5 && loss_opt <= 1.8 && std::abs(gap - 7.2) <= 0.5,
                   fmt("loss(FPA)=%.3f (12.2 +/- 0.5), loss(opt)=%.3f (<= 1.8), measured FPA gap at 30 dB=%.3f "
                       "(7.2 +/- 0.5)",
                       loss_fpa, loss_opt, gap)};
  });

  report("6", "solver agreement", [&] {
    const auto set = sample_gaussian_set(6, 6, 1500, derive_key(kSeed, {6}));
    const double c_pso = ergodic_capacity(pso.t_final, pso.r_final, db20, set).mean_bps_hz;
    const double c_sca = ergodic_capacity(sca.t_final, sca.r_final, db20, set).mean_bps_hz;
    const double ratio = static_cast<double>(pso.kernel_calls) / static_cast<double>(sca.kernel_calls);
    return Outcome{std::abs(c_pso - c_sca) <= 0.2 && ratio >= 1e3,
                   fmt("PSO %.4f vs SCA %.4f, |diff|=%.4f (<= 0.2); kernel calls %llu vs %llu, ratio %.0f (>= 1000)",
                       c_pso, c_sca, std::abs(c_pso - c_sca), static_cast<unsigned long long>(pso.kernel_calls),
                       static_cast<unsigned long long>(sca.kernel_calls), ratio)};
  });

  report("7", "monotone convergence", [&] {
    int violations = 0;
    int steps = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      AoConfig cfg;
      cfg.master_seed = seed;
      cfg.init = InitPolicy::Random;
      cfg.snr = db20;
      const auto s = ao_optimize(six, six, cfg);
      for (std::size_t k = 1; k < s.iterations.size(); ++k, ++steps)
        if (s.iterations[k].objective < s.iterations[k - 1].objective) ++violations;
      cfg.solver = Solver::Pso;
      const auto p = ao_optimize(six, six, cfg);
      for (std::size_t k = 1; k < p.iterations.size(); ++k, steps += 2) {
        const auto& it = p.iterations[k];
        if (it.shared_after_tx < it.shared_before) ++violations;
        if (it.shared_after_rx < it.shared_rx_start) ++violations;
      }
    }
    return Outcome{violations == 0, fmt("%d violations in %d checked steps over 10 seeds x 2 backends", violations, steps)};
  });

  report("8", "gradient oracle", [] {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      const int n = 2 + static_cast<int>(s % 5);
      const auto p = sorted_uniform_random_init({3.0, 0.15, n}, derive_key(kSeed, {8, s}));
      const Eigen::VectorXd g = logdet_gradient(p);
      for (int i = 0; i < n; ++i) {
        std::vector<double> hi(p.coords().begin(), p.coords().end());
        std::vector<double> lo = hi;
        hi[i] += 1e-6;
        lo[i] -= 1e-6;
        const double fd = (log_det2(build_correlation(hi)).value - log_det2(build_correlation(lo)).value) / 2e-6;
        worst = std::max(worst, std::abs(g(i) - fd) / std::max(std::abs(fd), 1e-3));
      }
    }
    return Outcome{worst <= 1e-5, fmt("max rel. err %.2e (<= 1e-5)", worst)};
  });

  report("9", "correlation-law oracle", [] {
    bool ok = true;
    std::string detail;
    std::uint64_t tag = 0;
    for (double d : {0.1, 0.25, 0.383, 0.5}) {
      const PositionVector t({0.0, d}, 1.0, 0.0);
      std::vector<Eigen::MatrixXcd> draws;
      for (std::uint64_t s = 0; s < 2000; ++s)
        draws.push_back(physical_channel(t, t, draw_paths(5000, derive_key(kSeed, {9, tag, s}))));
      ++tag;
      const double rho = empirical_correlation(draws, Side::Tx).matrix(0, 1);
      // Standard error from 20 batch means of 100 draws.
      std::vector<double> batch;
      for (int b = 0; b < 20; ++b)
        batch.push_back(
            empirical_correlation(std::span<const Eigen::MatrixXcd>(draws.data() + 100 * b, 100), Side::Tx).matrix(0, 1));
      const double se = mean_se(batch).se;
      const double target = oracle_j(0, kTwoPi * d);
      const bool hit = std::abs(rho - target) <= 3.0 * se;
      ok = ok && hit;
      detail += fmt("d=%.3f: %.4f vs %.4f (%.1f se); ", d, rho, target, std::abs(rho - target) / se);
    }
    return Outcome{ok, detail + "tolerance 3 se"};
  });

  report("10", "Wishart identity", [] {
    const auto set = sample_gaussian_set(4, 4, 20000, derive_key(kSeed, {10}));
    std::vector<double> v;
    for (const auto& g : set.samples) v.push_back(std::log((g * g.adjoint()).determinant().real()));
    const auto [m, se] = mean_se(v);
    double target = 0.0;
    for (int k = 1; k <= 4; ++k) target += digamma_int(k);
    return Outcome{std::abs(m - target) <= 3.0 * se,
                   fmt("mean %.4f vs %.4f, %.2f se (<= 3)", m, target, std::abs(m - target) / se)};
  });

  report("11", "special-function accuracy", [] {
    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double x = 0.005 * i;
      worst = std::max({worst, std::abs(bessel_j0(x) - oracle_j(0, x)), std::abs(bessel_j1(x) - oracle_j(1, x))});
    }
    const double printed[] = {2.405, 5.520, 8.654};
    bool zeros = true;
    for (int k = 1; k <= 3; ++k) zeros = zeros && std::abs(j0_zero(k) - printed[k - 1]) <= 5e-4;
    return Outcome{worst <= 1e-10 && zeros,
                   fmt("max abs err %.2e on [0, 50] (<= 1e-10); zeros %.3f %.3f %.3f", worst, j0_zero(1), j0_zero(2),
                       j0_zero(3))};
  });

  report("12", "scaling trend", [&] {
    bool ok = true;
    double last_fpa = -1.0;
    std::string detail;
    for (int n = 2; n <= 6; ++n) {
      const ApertureSpec spec{3.0, 0.3, n};
      const auto set = sample_gaussian_set(n, n, 1500, derive_key(kSeed, {12, static_cast<std::uint64_t>(n)}));
      const double iid = iid_capacity(n, n, db20, set).mean_bps_hz;
      const auto f = baseline_fpa(spec);
      const double fpa_loss = iid - ergodic_capacity(f, f, db20, set).mean_bps_hz;
      AoConfig cfg;
      cfg.master_seed = kSeed;
      cfg.snr = db20;
      const auto s = ao_optimize(spec, spec, cfg);
      cfg.solver = Solver::Pso;
      const auto p = ao_optimize(spec, spec, cfg);
      const double sca_loss = iid - ergodic_capacity(s.t_final, s.r_final, db20, set).mean_bps_hz;
      const double pso_loss = iid - ergodic_capacity(p.t_final, p.r_final, db20, set).mean_bps_hz;
      ok = ok && sca_loss <= 1.5 && pso_loss <= 1.5 && fpa_loss > last_fpa;
      last_fpa = fpa_loss;
      detail += fmt("N=%d fpa %.2f pso %.2f sca %.2f; ", n, fpa_loss, pso_loss, sca_loss);
    }
    return Outcome{ok, detail + "AO <= 1.5, FPA strictly increasing"};
  });

  report("S1", "scheme ordering at 30 dB", [&] {
    ExperimentSpec spec;
    spec.scenario = Scenario::Optimize;
    spec.snr_db = {30.0};
    spec.seeds = {kSeed};
    spec.schemes = {Scheme::Iid, Scheme::AoPso, Scheme::AoSca, Scheme::TxOnly, Scheme::RandomBest, Scheme::Fpa};
    const auto rows = run_scenario(spec);
    auto at = [&](const char* name) {
      for (const auto& r : rows)
        if (r.scheme == name) return r;
      return rows.front();
    };
    const auto iid = at("iid"), ap = at("ao_pso"), as = at("ao_sca"), tx = at("tx_only"), rb = at("random_best"),
               fp = at("fpa");
    auto sep = [](const ResultRow& a, const ResultRow& b) {
      return a.capacity_mean - b.capacity_mean >= 2.0 * std::max(a.capacity_stderr, b.capacity_stderr);
    };
    const double ao_best = std::max(ap.capacity_mean, as.capacity_mean);
    const bool ok = iid.capacity_mean >= ao_best - 2.0 * iid.capacity_stderr &&
                    std::abs(ap.capacity_mean - as.capacity_mean) <= 0.2 && sep(ap, tx) && sep(as, tx) && sep(tx, rb) &&
                    sep(rb, fp);
    return Outcome{ok, fmt("iid %.2f, ao_pso %.2f, ao_sca %.2f, tx_only %.2f, random_best %.2f, fpa %.2f (se ~%.2f)",
                           iid.capacity_mean, ap.capacity_mean, as.capacity_mean, tx.capacity_mean, rb.capacity_mean,
                           fp.capacity_mean, iid.capacity_stderr)};
  });

  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
