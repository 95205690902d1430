#pragma once

// Reference computations kept independent of the library code paths.

#include <cmath>
#include <cstdint>

#include <boost/math/distributions/binomial.hpp>

namespace oracle {

inline constexpr long double kBoltzmann = 1.380649e-23L;

inline double johnson_rms(double r, double t, double df) {
  return static_cast<double>(std::sqrt(4.0L * kBoltzmann * t * r * df));
}

// Maclaurin series erf(x) = 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1)),
// summed in long double until the term drops below 1e-12 of the result.
// For |x| > 3 the alternating series loses too many digits, so the
// complementary Laplace continued fraction is used there instead.
inline double erf(double xd) {
  const long double x = xd;
  const long double two_over_sqrt_pi = 1.1283791670955125738961589031215452L;
  if (std::fabs(x) <= 3.0L) {
    long double term = x;  // x^(2n+1) (-1)^n / n!
    long double sum = x;
    for (int n = 1; n < 500; ++n) {
      term *= -x * x / n;
      const long double add = term / (2 * n + 1);
      sum += add;
      if (std::fabs(add) < 1e-15L) break;
    }
    return static_cast<double>(two_over_sqrt_pi * sum);
  }
  // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + 2/(x + ...)))))
  const long double ax = std::fabs(x);
  long double frac = ax;
  for (int k = 200; k >= 1; --k) frac = ax + (k / 2.0L) / frac;
  const long double erfc = std::exp(-ax * ax) / std::sqrt(3.14159265358979323846264338327950288L) / frac;
  const long double value = 1.0L - erfc;
  return static_cast<double>(x < 0 ? -value : value);
}

// P(X > n/2) / (1 - P(X = n/2)) for X ~ Binomial(n, q), via boost's
// incomplete-beta based CDF.
inline double majority_success(double q, std::uint32_t n) {
  if (q <= 0.0) return 0.0;
  if (q >= 1.0) return 1.0;
  boost::math::binomial_distribution<double> bin(n, q);
  const double above = boost::math::cdf(boost::math::complement(bin, std::floor(n / 2.0)));
  const double tie = n % 2 == 0 ? boost::math::pdf(bin, n / 2.0) : 0.0;
  return above / (1.0 - tie);
}

}  // namespace oracle
