#pragma once

#include <span>

namespace kljn {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n - 1); 0 for n < 2
};

// Welford accumulation.
Moments sample_moments(std::span<const double> xs);

}  // namespace kljn
