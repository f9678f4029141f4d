#include "stefan/specfun.hpp"

#include <cmath>
#include <string>

namespace stefan::specfun {

namespace {

void check_arg(double z2, const char* who) {
  if (!(z2 >= 0.0) || z2 > kMaxSquaredArg)
    throw std::domain_error(std::string(who) + ": squared argument " +
                            std::to_string(z2) + " outside [0, 1e4]");
}

// Term ratio (z2/4) / (m (m+1)); stops once the next term drops below
// 1e-16 of the running sum and the terms are shrinking.
template <typename Real>
Real ratio_series(Real q) {
  Real term = 0.5;
  Real sum = term;
  for (int m = 1; m < 1000; ++m) {
    const Real factor = q / (static_cast<Real>(m) * (m + 1));
    term *= factor;
    sum += term;
    if (std::fabs(term) < Real(1.0e-16) * std::fabs(sum) && std::fabs(factor) < 1)
      break;
  }
  return sum;
}

}  // namespace

double bessel_i1_ratio(double z2) {
  check_arg(z2, "bessel_i1_ratio");
  // All terms positive: double accumulation loses nothing.
  return ratio_series<double>(z2 / 4.0);
}

double bessel_j1_ratio(double z2) {
  check_arg(z2, "bessel_j1_ratio");
  if (z2 > kJ1SeriesLimit) {
    const double z = std::sqrt(z2);
    return std::cyl_bessel_j(1.0, z) / z;
  }
  // Alternating terms peak near e^z / z before cancelling.
  return static_cast<double>(ratio_series<long double>(-static_cast<long double>(z2) / 4.0L));
}

double bessel_i1(double z) {
  if (!(z >= 0.0)) throw std::domain_error("bessel_i1: negative argument");
  return z * bessel_i1_ratio(z * z);
}

double bessel_j1(double z) {
  if (!(z >= 0.0)) throw std::domain_error("bessel_j1: negative argument");
  return z * bessel_j1_ratio(z * z);
}

}  // namespace stefan::specfun
