#include "fluidmimo/bench.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "fluidmimo/errors.hpp"
#include "fluidmimo/random.hpp"
#include "fluidmimo/special_functions.hpp"

namespace fluidmimo {

namespace {

constexpr std::array<std::pair<Scenario, std::string_view>, 6> kScenarioNames{{
    {Scenario::Optimize, "optimize"},
    {Scenario::SpacingCurve, "spacing-curve"},
    {Scenario::SweepSnr, "sweep-snr"},
    {Scenario::SweepAperture, "sweep-aperture"},
    {Scenario::SweepN, "sweep-n"},
    {Scenario::Convergence, "convergence"},
}};

constexpr std::array<std::pair<Scheme, std::string_view>, 7> kSchemeNames{{
    {Scheme::Iid, "iid"},
    {Scheme::AoPso, "ao_pso"},
    {Scheme::AoSca, "ao_sca"},
    {Scheme::TxOnly, "tx_only"},
    {Scheme::RandomBest, "random_best"},
    {Scheme::Fpa, "fpa"},
    {Scheme::HighSnr, "high_snr"},
}};

// Stream tags for the per-grid-point sample sets.
constexpr std::uint64_t kEvalStream = 0x5be0cd19ULL;
constexpr std::uint64_t kRandomStream = 0xcbbb9d5dULL;
constexpr std::uint64_t kRandomSamplesStream = 0x629a292aULL;

void append_double(std::string& out, double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("format_csv: number formatting failed");
  out.append(buf.data(), ptr);
}

std::vector<double> spacing_grid(const ExperimentSpec& spec) {
  std::vector<double> grid;
  const auto steps = static_cast<long>(std::floor((spec.spacing_hi - spec.spacing_lo) / spec.spacing_step + 1e-9));
  for (long i = 0; i <= steps; ++i) grid.push_back(std::round((spec.spacing_lo + static_cast<double>(i) * spec.spacing_step) * 1e9) / 1e9);
  return grid;
}

AoConfig ao_config(const ExperimentSpec& spec, Solver solver, double snr_db, std::uint64_t seed) {
  AoConfig cfg;
  cfg.solver = solver;
  cfg.snr = SnrSpec::from_db(snr_db);
  cfg.max_outer = spec.max_outer;
  cfg.tolerance = spec.tolerance;
  cfg.opt_samples = spec.opt_samples;
  cfg.eval_samples = spec.eval_samples;
  cfg.master_seed = seed;
  cfg.swarm = spec.swarm;
  cfg.sca = spec.sca;
  return cfg;
}

ResultRow make_row(const ExperimentSpec& spec, Scheme scheme, int n, int m, double aperture, double snr_db,
                   const CapacityEstimate& c, double det_rt, double det_rr, std::uint64_t seed) {
  return {std::string(scenario_name(spec.scenario)), std::string(scheme_name(scheme)), n, m, aperture, snr_db,
          c.mean_bps_hz, c.mc_std_error, det_rt, det_rr, seed};
}

double det_of(const PositionVector& p) { return determinant(build_correlation(p)); }

std::vector<ResultRow> run_spacing_curve(const ExperimentSpec& spec) {
  std::vector<ResultRow> rows;
  const std::vector<double> grid = spacing_grid(spec);
  for (std::uint64_t seed : spec.seeds) {
    for (int n : spec.n_values) {
      const int m = spec.m_override.value_or(n);
      const ChannelSampleSet samples =
          sample_gaussian_set(m, n, spec.eval_samples, derive_key(seed, {kEvalStream, static_cast<std::uint64_t>(n),
                                                                         static_cast<std::uint64_t>(m)}));
      for (double snr_db : spec.snr_db) {
        const SnrSpec snr = SnrSpec::from_db(snr_db);
        for (double d : grid) {
          auto place = [d](int count) {
            std::vector<double> x(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i) x[i] = i * d;
            return PositionVector(std::move(x), std::max(d * (count - 1), d), d);
          };
          const PositionVector t = place(n);
          const PositionVector r = place(m);
          for (Scheme scheme : spec.schemes) {
            switch (scheme) {
              case Scheme::Iid:
                rows.push_back(make_row(spec, scheme, n, m, d, snr_db, iid_capacity(n, m, snr, samples), 1.0, 1.0, seed));
                break;
              case Scheme::Fpa:
                rows.push_back(make_row(spec, scheme, n, m, d, snr_db, ergodic_capacity(t, r, snr, samples), det_of(t),
                                        det_of(r), seed));
                break;
              case Scheme::HighSnr: {
                CapacityEstimate c;
                c.mean_bps_hz = high_snr_capacity(t, r, snr);
                rows.push_back(make_row(spec, scheme, n, m, d, snr_db, c, det_of(t), det_of(r), seed));
                break;
              }
              default:
                throw InvalidArgument("spacing-curve supports only the iid, fpa and high_snr schemes");
            }
          }
        }
      }
    }
  }
  return rows;
}

std::vector<ResultRow> run_convergence(const ExperimentSpec& spec) {
  std::vector<ResultRow> rows;
  for (std::uint64_t seed : spec.seeds)
    for (int n : spec.n_values)
      for (double aperture : spec.apertures)
        for (double snr_db : spec.snr_db) {
          const int m = spec.m_override.value_or(n);
          const ApertureSpec tx{aperture, spec.d_min, n};
          const ApertureSpec rx{aperture, spec.d_min, m};
          const SnrSpec snr = SnrSpec::from_db(snr_db);
          const ChannelSampleSet eval = sample_gaussian_set(
              m, n, spec.eval_samples,
              derive_key(seed, {kEvalStream, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m)}));
          for (Scheme scheme : spec.schemes) {
            if (scheme == Scheme::Iid) {
              rows.push_back(make_row(spec, scheme, n, m, aperture, snr_db, iid_capacity(n, m, snr, eval), 1.0, 1.0, seed));
              continue;
            }
            if (scheme == Scheme::Fpa) {
              const PositionVector t = baseline_fpa(tx);
              const PositionVector r = baseline_fpa(rx);
              rows.push_back(make_row(spec, scheme, n, m, aperture, snr_db, ergodic_capacity(t, r, snr, eval), det_of(t),
                                      det_of(r), seed));
              continue;
            }
            if (scheme != Scheme::AoPso && scheme != Scheme::AoSca)
              throw InvalidArgument("convergence supports only the iid, fpa, ao_pso and ao_sca schemes");
            const Solver solver = scheme == Scheme::AoPso ? Solver::Pso : Solver::Sca;
            const OptimizationTrace trace = ao_optimize(tx, rx, ao_config(spec, solver, snr_db, seed));
            for (const AoIterate& it : trace.iterations) {
              ResultRow row = make_row(spec, scheme, n, m, aperture, snr_db, ergodic_capacity(it.t, it.r, snr, eval),
                                       it.det_rt, it.det_rr, seed);
              row.scheme += "@" + std::to_string(it.k);
              rows.push_back(std::move(row));
            }
          }
        }
  return rows;
}

std::vector<ResultRow> run_grid(const ExperimentSpec& spec) {
  std::vector<ResultRow> rows;
  for (std::uint64_t seed : spec.seeds)
    for (int n : spec.n_values)
      for (double aperture : spec.apertures) {
        const int m = spec.m_override.value_or(n);
        const ApertureSpec tx{aperture, spec.d_min, n};
        const ApertureSpec rx{aperture, spec.d_min, m};
        tx.require_feasible();
        rx.require_feasible();
        const ChannelSampleSet eval = sample_gaussian_set(
            m, n, spec.eval_samples,
            derive_key(seed, {kEvalStream, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m)}));
        // The log-det surrogate does not depend on the SNR: solve once per point.
        std::optional<OptimizationTrace> sca_trace;

        for (double snr_db : spec.snr_db) {
          const SnrSpec snr = SnrSpec::from_db(snr_db);
          for (Scheme scheme : spec.schemes) {
            std::optional<std::pair<PositionVector, PositionVector>> placement;
            switch (scheme) {
              case Scheme::Iid:
                rows.push_back(make_row(spec, scheme, n, m, aperture, snr_db, iid_capacity(n, m, snr, eval), 1.0, 1.0, seed));
                continue;
              case Scheme::Fpa:
                placement.emplace(baseline_fpa(tx), baseline_fpa(rx));
                break;
              case Scheme::AoSca:
                if (!sca_trace) sca_trace = ao_optimize(tx, rx, ao_config(spec, Solver::Sca, snr_db, seed));
                placement.emplace(sca_trace->t_final, sca_trace->r_final);
                break;
              case Scheme::AoPso: {
                const OptimizationTrace trace = ao_optimize(tx, rx, ao_config(spec, Solver::Pso, snr_db, seed));
                placement.emplace(trace.t_final, trace.r_final);
                break;
              }
              case Scheme::TxOnly: {
                const OptimizationTrace trace =
                    baseline_tx_only(tx, rx, ao_config(spec, spec.tx_only_solver, snr_db, seed));
                placement.emplace(trace.t_final, trace.r_final);
                break;
              }
              case Scheme::RandomBest: {
                const ChannelSampleSet opt = sample_gaussian_set(
                    m, n, spec.opt_samples,
                    derive_key(seed, {kRandomSamplesStream, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m)}));
                placement = baseline_random_best(tx, rx, snr, opt, spec.random_trials, derive_key(seed, {kRandomStream}));
                break;
              }
              case Scheme::HighSnr:
                throw InvalidArgument("high_snr rows are only produced by the spacing curve");
            }
            const auto& [t, r] = *placement;
            rows.push_back(make_row(spec, scheme, n, m, aperture, snr_db, ergodic_capacity(t, r, snr, eval), det_of(t),
                                    det_of(r), seed));
          }
        }
      }
  return rows;
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  for (const auto& [value, name] : kScenarioNames)
    if (value == s) return name;
  return "unknown";
}

Scenario parse_scenario(std::string_view id) {
  for (const auto& [value, name] : kScenarioNames)
    if (name == id) return value;
  throw InvalidArgument("unknown scenario id: " + std::string(id));
}

std::string_view scheme_name(Scheme s) {
  for (const auto& [value, name] : kSchemeNames)
    if (value == s) return name;
  return "unknown";
}

Scheme parse_scheme(std::string_view id) {
  for (const auto& [value, name] : kSchemeNames)
    if (name == id) return value;
  throw InvalidArgument("unknown scheme: " + std::string(id));
}

void ExperimentSpec::validate() const {
  if (schemes.empty()) throw InvalidArgument("experiment: scheme list is empty");
  if (snr_db.empty() || n_values.empty() || seeds.empty())
    throw InvalidArgument("experiment: SNR, antenna-count and seed lists must be non-empty");
  if (scenario != Scenario::SpacingCurve && apertures.empty())
    throw InvalidArgument("experiment: aperture list is empty");
  for (int n : n_values)
    if (n < 1) throw InvalidArgument("experiment: antenna counts must be >= 1");
  if (m_override && *m_override < 1) throw InvalidArgument("experiment: M must be >= 1");
  if (!(d_min >= 0.0)) throw InvalidArgument("experiment: d_min must be >= 0");
  if (scenario == Scenario::SpacingCurve &&
      (!(spacing_step > 0.0) || !(spacing_lo > 0.0) || !(spacing_hi >= spacing_lo)))
    throw InvalidArgument("experiment: spacing grid needs 0 < lo <= hi and step > 0");
  if (random_trials < 1) throw InvalidArgument("experiment: random trials must be >= 1");
  if (eval_samples < 1 || opt_samples < 1) throw InvalidArgument("experiment: sample counts must be >= 1");
  if (max_outer < 1 || !(tolerance > 0.0)) throw InvalidArgument("experiment: need max_outer >= 1 and tolerance > 0");
  swarm.validate();
  sca.validate();
}

std::vector<ResultRow> run_scenario(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<ResultRow> rows;
  switch (spec.scenario) {
    case Scenario::SpacingCurve: rows = run_spacing_curve(spec); break;
    case Scenario::Convergence: rows = run_convergence(spec); break;
    default: rows = run_grid(spec); break;
  }
  if (!spec.output_path.empty()) {
    std::ofstream out(spec.output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + spec.output_path);
    write_csv(out, rows);
    if (!out) throw std::runtime_error("failed writing output file: " + spec.output_path);
  }
  return rows;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const ResultRow& row : rows) {
    out += row.scenario;
    out += ',';
    out += row.scheme;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.m);
    out += ',';
    append_double(out, row.aperture);
    out += ',';
    append_double(out, row.gamma_db);
    out += ',';
    append_double(out, row.capacity_mean);
    out += ',';
    append_double(out, row.capacity_stderr);
    out += ',';
    append_double(out, row.det_rt);
    out += ',';
    append_double(out, row.det_rr);
    out += ',';
    out += std::to_string(row.seed);
    out += '\n';
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) { out << format_csv(rows); }

PositionVector baseline_fpa(const ApertureSpec& spec) {
  spec.require_feasible();
  std::vector<double> x(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) x[i] = std::min(i * spec.d_min, spec.length);
  return PositionVector(std::move(x), spec.length, spec.d_min);
}

std::pair<PositionVector, PositionVector> baseline_random_best(const ApertureSpec& tx_spec,
                                                               const ApertureSpec& rx_spec, const SnrSpec& snr,
                                                               const ChannelSampleSet& samples, int trials,
                                                               std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("baseline_random_best: trials must be >= 1");
  std::optional<std::pair<PositionVector, PositionVector>> best;
  double best_capacity = 0.0;
  for (int i = 0; i < trials; ++i) {
    PositionVector t = sorted_uniform_random_init(tx_spec, derive_key(seed, {static_cast<std::uint64_t>(i), 0}));
    PositionVector r = sorted_uniform_random_init(rx_spec, derive_key(seed, {static_cast<std::uint64_t>(i), 1}));
    const double c = ergodic_capacity(t, r, snr, samples).mean_bps_hz;
    if (!best || c > best_capacity) {
      best_capacity = c;
      best.emplace(std::move(t), std::move(r));
    }
  }
  return *best;
}

OptimizationTrace baseline_tx_only(const ApertureSpec& tx_spec, const ApertureSpec& rx_spec, AoConfig cfg) {
  cfg.tx_only = true;
  cfg.rx_start = baseline_fpa(rx_spec);
  return ao_optimize(tx_spec, rx_spec, cfg);
}

std::vector<ValidationCheck> run_validation(std::uint64_t seed, int paths, int draws) {
  std::vector<ValidationCheck> checks;

  // Bessel correlation law from the multipath model: batch means give the MC error.
  constexpr int kBatches = 20;
  const std::array<double, 4> spacings{0.1, 0.25, 0.383, 0.5};
  for (std::size_t si = 0; si < spacings.size(); ++si) {
    const double d = spacings[si];
    const PositionVector t({0.0, d}, d, 0.0);
    const PositionVector r({0.0, d}, d, 0.0);
    std::vector<Eigen::MatrixXcd> all;
    all.reserve(static_cast<std::size_t>(draws));
    for (int s = 0; s < draws; ++s)
      all.push_back(physical_channel(t, r, draw_paths(paths, derive_key(seed, {si, static_cast<std::uint64_t>(s)}))));
    const double estimate = empirical_correlation(all, Side::Tx).matrix(0, 1);
    const int per_batch = draws / kBatches;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int b = 0; b < kBatches; ++b) {
      std::span<const Eigen::MatrixXcd> batch(all.data() + b * per_batch, static_cast<std::size_t>(per_batch));
      const double v = empirical_correlation(batch, Side::Tx).matrix(0, 1);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / kBatches;
    const double se = std::sqrt(std::max(0.0, (sum_sq / kBatches - mean * mean) * kBatches / (kBatches - 1)) / kBatches);
    const double expected = bessel_j0(kTwoPi * d);
    std::ostringstream name;
    name << "correlation_law_d=" << d;
    checks.push_back({name.str(), estimate, expected, 3.0 * se, std::abs(estimate - expected) <= 3.0 * se});
  }

  // Analytic gradient against central differences.
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    const ApertureSpec spec{3.0, 0.15, n};
    const PositionVector p = sorted_uniform_random_init(spec, derive_key(seed, {0x77, static_cast<std::uint64_t>(trial)}));
    const Eigen::VectorXd g = logdet_gradient(p);
    for (int i = 0; i < n; ++i) {
      std::vector<double> plus(p.coords().begin(), p.coords().end());
      std::vector<double> minus = plus;
      const double h = 1e-6;
      plus[i] += h;
      minus[i] -= h;
      const double fd =
          (log_det2(build_correlation(plus)).value - log_det2(build_correlation(minus)).value) / (2.0 * h);
      const double scale = std::max(std::abs(fd), 1e-3);
      worst = std::max(worst, std::abs(g(i) - fd) / scale);
    }
  }
  checks.push_back({"gradient_max_rel_err", worst, 0.0, 1e-5, worst <= 1e-5});

  // E[ln det(G G^H)] = sum psi(m) for N = M = 4.
  const ChannelSampleSet w = sample_gaussian_set(4, 4, 20000, derive_key(seed, {0x88}));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& g : w.samples) {
    const Eigen::MatrixXcd gram = g * g.adjoint();
    Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    double ld = 0.0;
    for (Eigen::Index i = 0; i < 4; ++i) ld += 2.0 * std::log(llt.matrixLLT()(i, i).real());
    sum += ld;
    sum_sq += ld * ld;
  }
  const double count = static_cast<double>(w.size());
  const double mean = sum / count;
  const double se = std::sqrt((sum_sq / count - mean * mean) / (count - 1.0));
  double expected = 0.0;
  for (int m = 1; m <= 4; ++m) expected += digamma_int(m);
  checks.push_back({"wishart_logdet", mean, expected, 3.0 * se, std::abs(mean - expected) <= 3.0 * se});
  return checks;
}

}  // namespace fluidmimo
