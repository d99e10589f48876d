#pragma once

namespace fluidmimo {

/// Bessel function of the first kind, order 0. Absolute error below 1e-10 on
/// [0, 100]; negative arguments use J0(-x) = J0(x).
/// Throws InvalidArgument for non-finite x.
double bessel_j0(double x);

/// Bessel function of the first kind, order 1 (odd: J1(-x) = -J1(x)).
/// Throws InvalidArgument for non-finite x.
double bessel_j1(double x);

/// k-th positive zero of J0, k in [1, 20].
double j0_zero(int k);

/// Digamma at a positive integer, psi(m) = -gamma_E + sum_{j<m} 1/j.
double digamma_int(int m);

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kLn2 = 0.69314718055994530941723212145817657;

}  // namespace fluidmimo
