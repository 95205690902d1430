#include "kljn/analytic.hpp"

#include <cmath>
#include <numbers>

#include "kljn/errors.hpp"
#include "kljn/physics.hpp"

namespace kljn {

double erf(double x) { return std::erf(x); }

double exceed_probability(double u_th, double u_dcw, double u_eff) {
  if (!(u_eff >= 0.0)) throw InvalidParameter("exceed_probability: u_eff must be nonnegative");
  if (u_eff == 0.0) return u_dcw > u_th ? 1.0 : (u_dcw < u_th ? 0.0 : 0.5);
  return 0.5 * (1.0 - erf((u_th - u_dcw) / (u_eff * std::numbers::sqrt2)));
}

double predict_bit_success(double q, std::uint32_t n) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidParameter("predict_bit_success: q outside [0, 1]");
  if (n < 1) throw InvalidParameter("predict_bit_success: n must be at least 1");
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;

  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  const double log_nfact = std::lgamma(n + 1.0);
  double upper = 0.0;
  double lower = 0.0;
  for (std::uint32_t k = 0; k <= n; ++k) {
    if (2 * k == n) continue;
    const double log_pmf = log_nfact - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                           k * log_q + (n - k) * log_1mq;
    (2 * k > n ? upper : lower) += std::exp(log_pmf);
  }
  return upper / (upper + lower);
}

AnalyticPrediction predict(const SystemParams& params) {
  validate(params);
  const auto src = effective_sources(params);
  const double u_th = 0.5 * (src.alice + src.bob);

  AnalyticPrediction out;
  out.temp_eff = params.temp_eff;
  out.u_eff = wire_ac_rms(BitState::LH, params);
  out.q_lh = exceed_probability(u_th, wire_dc_voltage(BitState::LH, params), out.u_eff);
  out.q_hl = exceed_probability(u_th, wire_dc_voltage(BitState::HL, params), out.u_eff);

  // Probability each state's samples fall on the side Eve reads as that state.
  const bool a_greater = src.alice >= src.bob;
  const double right_lh = a_greater ? out.q_lh : 1.0 - out.q_lh;
  const double right_hl = a_greater ? 1.0 - out.q_hl : out.q_hl;
  out.p_bit = 0.5 * (predict_bit_success(right_lh, params.samples_per_bit) +
                     predict_bit_success(right_hl, params.samples_per_bit));
  return out;
}

std::vector<AnalyticPrediction> predict_curve(const SystemParams& params,
                                              std::span<const double> temps) {
  if (temps.empty()) throw InvalidParameter("predict_curve: empty temperature list");
  std::vector<AnalyticPrediction> curve;
  curve.reserve(temps.size());
  auto p = params;
  for (double t : temps) {
    p.temp_eff = t;
    curve.push_back(predict(p));
  }
  return curve;
}

double temperature_for_success(const SystemParams& params, double target, double t_lo,
                               double t_hi) {
  if (!(target > 0.5 && target < 1.0))
    throw InvalidParameter("temperature_for_success: target must lie in (0.5, 1)");
  auto p = params;
  auto success_at = [&p](double log_t) {
    p.temp_eff = std::exp(log_t);
    return predict(p).p_bit;
  };
  double lo = std::log(t_lo);
  double hi = std::log(t_hi);
  if (success_at(lo) < target || success_at(hi) > target)
    throw InvalidParameter("temperature_for_success: target not bracketed");
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (success_at(mid) >= target ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace kljn
