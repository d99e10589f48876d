#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fluidmimo/correlation.hpp"

namespace fluidmimo {

/// One side's aperture: `count` antennas on [0, length] with gaps >= d_min.
struct ApertureSpec {
  double length = 1.0;
  double d_min = 0.0;
  int count = 1;

  /// length >= (count - 1) d_min, plus basic sanity of each field.
  bool feasible() const noexcept;

  /// Throws InvalidArgument when !feasible().
  void require_feasible() const;
};

/// True iff the sorted coordinates lie in [0, length] and every gap is at
/// least d_min (with kSpacingSlack). The size must equal spec.count.
bool is_feasible(std::span<const double> coords, const ApertureSpec& spec);

/// Feasibility restoration: clip to [0, length], sort, push elements apart
/// with a forward pass and, if the last element overflows, pull them back
/// with a backward pass from the upper boundary.
PositionVector project(std::span<const double> raw, const ApertureSpec& spec);

/// Evenly spread over the full aperture; a single antenna sits at the midpoint.
PositionVector uniform_init(const ApertureSpec& spec);

/// Sorted uniform draws on [0, length], projected if spacing is violated.
PositionVector sorted_uniform_random_init(const ApertureSpec& spec, std::uint64_t seed);

}  // namespace fluidmimo
