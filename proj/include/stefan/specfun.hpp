#pragma once

// Bessel ratios in the squared argument z2 = z^2. Both I1(z)/z and J1(z)/z
// are even entire functions of z, so working in z2 never needs a square
// root and is well defined at z = 0 (limit 1/2).

#include <stdexcept>

namespace stefan::specfun {

/// Arguments above this are rejected.
inline constexpr double kMaxSquaredArg = 1.0e4;

/// Above this, the alternating J1 series loses too many digits to
/// cancellation even in extended precision; the library routine is used.
inline constexpr double kJ1SeriesLimit = 400.0;

/// I1(sqrt(z2)) / sqrt(z2) from the ascending series
///   (1/2) sum_m (z2/4)^m / (m! (m+1)!).
/// Throws std::domain_error for z2 < 0, z2 > kMaxSquaredArg or NaN.
double bessel_i1_ratio(double z2);

/// J1(sqrt(z2)) / sqrt(z2), alternating counterpart of bessel_i1_ratio.
double bessel_j1_ratio(double z2);

/// Convenience wrappers returning I1(z) and J1(z) for z >= 0.
double bessel_i1(double z);
double bessel_j1(double z);

}  // namespace stefan::specfun
