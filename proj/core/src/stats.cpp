#include "kljn/stats.hpp"

namespace kljn {

Moments sample_moments(std::span<const double> xs) {
  double mean = 0.0;
  double m2 = 0.0;
  double n = 0.0;
  for (double x : xs) {
    n += 1.0;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }
  return {mean, n > 1.0 ? m2 / (n - 1.0) : 0.0};
}

}  // namespace kljn
