#include "kljn/eve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kljn/errors.hpp"
#include "kljn/stats.hpp"

namespace kljn {

ResistanceRoots solve_resistances(double var_u, double var_i, const SystemParams& params) {
  if (!(var_i > 0.0) || !(var_u > 0.0)) return {};
  const double four_ktdf = 4.0 * kBoltzmann * params.temp_eff * params.bandwidth;
  const double sum = four_ktdf / var_i;
  const double product = var_u / var_i;
  const double half_root = 0.5 * std::sqrt(std::max(sum * sum - 4.0 * product, 0.0));

  ResistanceRoots roots{0.5 * sum - half_root, 0.5 * sum + half_root, AcClass::mixed};
  if (!(roots.low > 0.0)) return roots;

  const double low = snap_resistance(roots.low, params);
  const double high = snap_resistance(roots.high, params);
  if (low == high) roots.cls = low == params.r_low ? AcClass::LL : AcClass::HH;
  return roots;
}

AcClass classify_state_from_ac(const WireTrace& trace, const SystemParams& params) {
  if (trace.u.size() < kMinClassifySamples || trace.i.size() < kMinClassifySamples)
    throw InsufficientData("classification needs at least 100 samples per trace");
  return solve_resistances(sample_moments(trace.u).variance, sample_moments(trace.i).variance,
                           params)
      .cls;
}

DcEstimates estimate_dc_sources(std::span<const WireTrace> traces, const SystemParams& params,
                                BitState known) {
  if (known != BitState::LL && known != BitState::HH)
    throw InvalidParameter("DC estimation needs a state with known resistors (LL or HH)");

  double sum_u = 0.0;
  double sum_i = 0.0;
  std::size_t n = 0;
  for (const auto& t : traces) {
    for (double u : t.u) sum_u += u;
    for (double i : t.i) sum_i += i;
    n += t.u.size();
  }
  if (n == 0) throw InsufficientData("no samples available for DC estimation");

  const auto [ra, rb] = resistors(known, params);
  const double mean_u = sum_u / static_cast<double>(n);
  const double mean_i = sum_i / static_cast<double>(n);
  const auto truth = effective_sources(params);

  DcEstimates est;
  est.u_dcb_hat = mean_u - rb * mean_i;
  est.u_dca_hat = mean_u + ra * mean_i;
  est.e_a = est.u_dca_hat - truth.alice;
  est.e_b = est.u_dcb_hat - truth.bob;
  est.n_avg = n;
  return est;
}

double threshold_voltage(const DcEstimates& est) { return 0.5 * (est.u_dca_hat + est.u_dcb_hat); }

Polarity polarity_of(const DcEstimates& est) {
  return est.u_dca_hat >= est.u_dcb_hat ? Polarity::a_greater : Polarity::b_greater;
}

AttackOutcome guess_bit(std::span<const double> samples, double threshold, Polarity polarity) {
  if (samples.empty()) throw InsufficientData("guess_bit: empty trace");
  const auto above = static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [threshold](double x) { return x > threshold; }));

  AttackOutcome out;
  out.g = static_cast<double>(above) / static_cast<double>(samples.size());
  if (2 * above == samples.size()) {
    out.guess = Guess::undetermined;
    return out;
  }
  const bool mostly_above = 2 * above > samples.size();
  const bool lh = polarity == Polarity::a_greater ? mostly_above : !mostly_above;
  out.guess = lh ? Guess::LH : Guess::HL;
  return out;
}

AttackOutcome guess_bit(const WireTrace& trace, double threshold, Polarity polarity) {
  return guess_bit(trace.u, threshold, polarity);
}

GuessStats tally(std::span<const AttackOutcome> outcomes) {
  GuessStats stats;
  for (const auto& o : outcomes) {
    if (o.guess == Guess::undetermined) {
      ++stats.n_undetermined;
      continue;
    }
    ++stats.n_tot;
    if (o.correct.value_or(false)) ++stats.n_cor;
  }
  stats.p = stats.n_tot == 0 ? std::numeric_limits<double>::quiet_NaN()
                             : static_cast<double>(stats.n_cor) / static_cast<double>(stats.n_tot);
  return stats;
}

AttackResult execute_attack(const ExchangeRun& run, AttackChannel channel) {
  const auto& params = run.params;

  std::vector<WireTrace> calibration;
  for (const auto& bep : run.beps)
    if (classify_state_from_ac(bep.trace, params) == AcClass::LL) calibration.push_back(bep.trace);
  if (calibration.empty())
    throw InsufficientData("no LL period identified; Eve cannot estimate the DC sources");

  AttackResult result;
  result.calibration_beps = calibration.size();
  result.estimates = estimate_dc_sources(calibration, params, BitState::LL);
  result.polarity = polarity_of(result.estimates);
  if (channel == AttackChannel::voltage) {
    result.threshold = threshold_voltage(result.estimates);
  } else {
    // LH and HL see the same loop resistance, hence the same DC current.
    result.threshold = (result.estimates.u_dca_hat - result.estimates.u_dcb_hat) /
                       (params.r_low + params.r_high);
  }

  for (std::size_t k = 0; k < run.beps.size(); ++k) {
    const auto& bep = run.beps[k];
    if (!bep.retained) continue;
    const auto& samples = channel == AttackChannel::voltage ? bep.trace.u : bep.trace.i;
    auto outcome = guess_bit(samples, result.threshold, result.polarity);
    if (outcome.guess != Guess::undetermined)
      outcome.correct = (outcome.guess == Guess::LH) == (bep.state == BitState::LH);
    result.bep_index.push_back(k);
    result.outcomes.push_back(outcome);
  }
  if (result.outcomes.empty()) throw InsufficientData("no retained BEP to attack");

  result.stats = tally(result.outcomes);
  return result;
}

GuessStats run_attack(const ExchangeRun& run) { return execute_attack(run).stats; }

GuessStats run_current_attack(const ExchangeRun& run) {
  return execute_attack(run, AttackChannel::current).stats;
}

}  // namespace kljn
