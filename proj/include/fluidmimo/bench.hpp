#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fluidmimo/ao.hpp"

namespace fluidmimo {

enum class Scenario { Optimize, SpacingCurve, SweepSnr, SweepAperture, SweepN, Convergence };

/// Placement schemes. `HighSnr` is the closed-form approximation and is only
/// meaningful on the spacing curve.
enum class Scheme { Iid, AoPso, AoSca, TxOnly, RandomBest, Fpa, HighSnr };

std::string_view scenario_name(Scenario s);
/// Throws InvalidArgument for unknown ids.
Scenario parse_scenario(std::string_view id);
std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view id);

struct ExperimentSpec {
  Scenario scenario = Scenario::Optimize;
  std::vector<double> snr_db{20.0};
  std::vector<double> apertures{2.0};  // A = B, wavelengths
  std::vector<int> n_values{6};        // N = M unless m_override is set
  std::optional<int> m_override;
  double d_min = 0.3;
  // Spacing grid for the spacing curve: lo, lo + step, ..., <= hi.
  double spacing_lo = 0.1;
  double spacing_hi = 1.0;
  double spacing_step = 0.005;
  std::vector<Scheme> schemes{Scheme::Iid, Scheme::AoSca, Scheme::Fpa};
  std::vector<std::uint64_t> seeds{1};
  /// Solver used by the tx_only baseline.
  Solver tx_only_solver = Solver::Pso;
  int random_trials = 50;
  /// Monte-Carlo samples for evaluation rows (spacing curve and final evaluation).
  int eval_samples = 1500;
  int opt_samples = 200;
  int max_outer = 12;
  double tolerance = 1e-3;
  SwarmConfig swarm{};
  ScaConfig sca{};
  std::string output_path;

  void validate() const;
};

struct ResultRow {
  std::string scenario;
  std::string scheme;
  int n = 0;
  int m = 0;
  double aperture = 0.0;  // spacing d on the spacing curve
  double gamma_db = 0.0;
  double capacity_mean = 0.0;
  double capacity_stderr = 0.0;
  double det_rt = 1.0;
  double det_rr = 1.0;
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kCsvHeader =
    "scenario,scheme,N,M,aperture,gamma_db,capacity_mean,capacity_stderr,det_RT,det_RR,seed";

/// Runs every grid point and scheme in deterministic order. Writes the CSV to
/// spec.output_path when it is non-empty (throws std::runtime_error if the
/// file cannot be written).
std::vector<ResultRow> run_scenario(const ExperimentSpec& spec);

/// Locale-independent CSV: header row, '.' decimals, shortest round-trip doubles, '\n'.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::string format_csv(const std::vector<ResultRow>& rows);

/// Uniform d_min-spaced array starting at 0.
PositionVector baseline_fpa(const ApertureSpec& spec);

/// Best of `trials` random feasible (t, r) pairs by capacity on `samples`.
std::pair<PositionVector, PositionVector> baseline_random_best(const ApertureSpec& tx_spec,
                                                               const ApertureSpec& rx_spec, const SnrSpec& snr,
                                                               const ChannelSampleSet& samples, int trials,
                                                               std::uint64_t seed);

/// One-sided AO: only the TX positions move, RX is pinned to the FPA layout.
OptimizationTrace baseline_tx_only(const ApertureSpec& tx_spec, const ApertureSpec& rx_spec, AoConfig cfg);

struct ValidationCheck {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Self-checks: Bessel-correlation law from the multipath model, analytic vs
/// finite-difference gradient, and the Wishart log-det identity.
std::vector<ValidationCheck> run_validation(std::uint64_t seed, int paths = 5000, int draws = 2000);

}  // namespace fluidmimo
