#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kljn/params.hpp"

namespace kljn {

// (1/sqrt(pi)) * integral_{-x}^{x} exp(-y^2) dy
double erf(double x);

// Probability that a Gaussian wire sample with mean u_dcw and rms u_eff lies
// above u_th:  0.5 [1 - erf((u_th - u_dcw) / (u_eff sqrt 2))].
// For u_eff == 0 the step limit is returned (1, 0, or 0.5 on equality).
double exceed_probability(double u_th, double u_dcw, double u_eff);

// Probability that a majority vote over n independent samples, each "right"
// with probability q, is right: P(X > n/2) / (1 - P(X = n/2)), X ~ Bin(n, q).
// Ties are excluded as the attack leaves them undetermined. Exact summation.
double predict_bit_success(double q, std::uint32_t n);

struct AnalyticPrediction {
  double temp_eff = 0.0;
  double q_lh = 0.5;  // per-sample P(U > U_th) in LH
  double q_hl = 0.5;  // same in HL
  double p_bit = 0.5;
  double u_eff = 0.0;
};

// Prediction at params.temp_eff, with the exact midpoint threshold and the
// polarity Eve would estimate in the noiseless limit.
AnalyticPrediction predict(const SystemParams& params);

std::vector<AnalyticPrediction> predict_curve(const SystemParams& params,
                                              std::span<const double> temps);

// Temperature at which predict().p_bit equals `target` (0.5 < target < 1),
// found by bisection in log T over [t_lo, t_hi].
double temperature_for_success(const SystemParams& params, double target, double t_lo = 1.0,
                               double t_hi = 1.0e30);

}  // namespace kljn
