#include "fluidmimo/special_functions.hpp"

#include <cmath>
#include <string>

#include "fluidmimo/errors.hpp"

namespace fluidmimo {

namespace {

// Power series is used below this argument, Miller recurrence up to
// kAsymptoticFrom, Hankel asymptotic expansion above.
constexpr double kSeriesTo = 8.0;
constexpr double kAsymptoticFrom = 25.0;

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) throw InvalidArgument(std::string(fn) + ": argument must be finite");
}

double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

double j1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 0.5 * x;
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

struct J01 {
  double j0;
  double j1;
};

// Miller's backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized by
// J0 + 2 (J2 + J4 + ...) = 1.
J01 miller(double x) {
  int start = static_cast<int>(x) + 40;
  if (start % 2 != 0) ++start;
  const double two_over_x = 2.0 / x;
  double next = 0.0;   // J_{k+1}
  double cur = 1e-30;  // J_k
  double norm = 0.0;
  double j1 = 0.0;
  for (int k = start; k >= 1; --k) {
    double prev = k * two_over_x * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 == 1) j1 = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      j1 *= 1e-250;
    }
  }
  norm += cur;  // J0
  return {cur / norm, j1 / norm};
}

// sqrt(2/(pi x)) (P cos(chi) - Q sin(chi)), chi = x - (nu/2 + 1/4) pi, with
// the asymptotic P, Q series truncated at their smallest term.
double hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  const double eight_x = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;  // a_k(nu) / x^k with sign folded
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * eight_x);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    // k odd contributes to Q, k even to P; signs alternate in pairs.
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (last < 1e-18) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  x = std::abs(x);
  if (x < kSeriesTo) return j0_series(x);
  if (x < kAsymptoticFrom) return miller(x).j0;
  return hankel_asymptotic(0, x);
}

double bessel_j1(double x) {
  require_finite(x, "bessel_j1");
  const double sign = x < 0.0 ? -1.0 : 1.0;
  x = std::abs(x);
  if (x < kSeriesTo) return sign * j1_series(x);
  if (x < kAsymptoticFrom) return sign * miller(x).j1;
  return sign * hankel_asymptotic(1, x);
}

double j0_zero(int k) {
  if (k < 1 || k > 20) throw InvalidArgument("j0_zero: k must lie in [1, 20]");
  double x = (k - 0.25) * kPi;
  for (int it = 0; it < 50; ++it) {
    // J0' = -J1
    const double step = bessel_j0(x) / bessel_j1(x);
    x += step;
    if (std::abs(step) < 1e-15 * x) break;
  }
  return x;
}

double digamma_int(int m) {
  if (m < 1) throw InvalidArgument("digamma_int: m must be >= 1");
  double harmonic = 0.0;
  for (int j = m - 1; j >= 1; --j) harmonic += 1.0 / j;
  return harmonic - kEulerGamma;
}

}  // namespace fluidmimo
