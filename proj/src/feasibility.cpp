#include "fluidmimo/feasibility.hpp"

#include <algorithm>
#include <cmath>

#include "fluidmimo/errors.hpp"
#include "fluidmimo/random.hpp"

namespace fluidmimo {

bool ApertureSpec::feasible() const noexcept {
  if (!(length > 0.0) || !std::isfinite(length)) return false;
  if (!(d_min >= 0.0) || !std::isfinite(d_min)) return false;
  if (count < 1) return false;
  return length >= (count - 1) * d_min - kSpacingSlack;
}

void ApertureSpec::require_feasible() const {
  if (!feasible())
    throw InvalidArgument("aperture spec infeasible: need length > 0, d_min >= 0, count >= 1 and "
                          "length >= (count - 1) * d_min");
}

bool is_feasible(std::span<const double> coords, const ApertureSpec& spec) {
  if (static_cast<int>(coords.size()) != spec.count || coords.empty()) return false;
  std::vector<double> sorted(coords.begin(), coords.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!std::isfinite(sorted[i]) || sorted[i] < 0.0 || sorted[i] > spec.length) return false;
    if (i > 0 && sorted[i] - sorted[i - 1] < spec.d_min - kSpacingSlack) return false;
  }
  return true;
}

PositionVector project(std::span<const double> raw, const ApertureSpec& spec) {
  spec.require_feasible();
  if (static_cast<int>(raw.size()) != spec.count)
    throw InvalidArgument("project: coordinate count does not match the aperture spec");

  std::vector<double> x(raw.begin(), raw.end());
  for (double& v : x) {
    if (std::isnan(v)) throw InvalidArgument("project: NaN coordinate");
    v = std::clamp(v, 0.0, spec.length);
  }
  std::sort(x.begin(), x.end());

  const std::size_t n = x.size();
  for (std::size_t i = 1; i < n; ++i)
    if (x[i] - x[i - 1] < spec.d_min - kSpacingSlack) x[i] = x[i - 1] + spec.d_min;

  if (x[n - 1] > spec.length) {
    x[n - 1] = spec.length;
    for (std::size_t i = n - 1; i-- > 0;)
      if (x[i + 1] - x[i] < spec.d_min - kSpacingSlack) x[i] = x[i + 1] - spec.d_min;
    // Round-off when length == (count - 1) d_min exactly.
    for (double& v : x) v = std::max(v, 0.0);
  }
  return PositionVector(std::move(x), spec.length, spec.d_min);
}

PositionVector uniform_init(const ApertureSpec& spec) {
  spec.require_feasible();
  if (spec.count == 1) return PositionVector({spec.length / 2.0}, spec.length, spec.d_min);
  std::vector<double> x(static_cast<std::size_t>(spec.count));
  const double step = spec.length / (spec.count - 1);
  for (int i = 0; i < spec.count; ++i) x[i] = i * step;
  x.back() = spec.length;
  return PositionVector(std::move(x), spec.length, spec.d_min);
}

PositionVector sorted_uniform_random_init(const ApertureSpec& spec, std::uint64_t seed) {
  spec.require_feasible();
  KeyedRng rng(seed, {0x3c6ef372ULL});
  std::vector<double> x(static_cast<std::size_t>(spec.count));
  for (double& v : x) v = rng.uniform(0.0, spec.length);
  std::sort(x.begin(), x.end());
  if (is_feasible(x, spec)) return PositionVector(std::move(x), spec.length, spec.d_min);
  return project(x, spec);
}

}  // namespace fluidmimo
