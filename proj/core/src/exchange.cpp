#include "kljn/exchange.hpp"

#include <cmath>

#include "kljn/errors.hpp"
#include "kljn/rng.hpp"
#include "kljn/stats.hpp"

namespace kljn {

BitState draw_bit_state(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t bits = mix64(derive_seed(seed, index, Stream::bit_state));
  return static_cast<BitState>(bits >> 62);
}

ExchangeRun run_key_exchange(const SystemParams& params) {
  validate(params);
  std::vector<BitState> states(params.key_length);
  for (std::uint32_t k = 0; k < params.key_length; ++k)
    states[k] = draw_bit_state(params.master_seed, k);
  return run_key_exchange(params, states);
}

ExchangeRun run_key_exchange(const SystemParams& params, std::span<const BitState> states) {
  ExchangeRun run{params, {}};
  run.params.key_length = static_cast<std::uint32_t>(states.size());
  validate(run.params);

  run.beps.reserve(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto seed = derive_seed(params.master_seed, k, Stream::bep_noise);
    run.beps.push_back({states[k], simulate_bep(states[k], params, seed), is_secure(states[k])});
  }
  return run;
}

double peer_resistance_from_variance(double variance, double own_r, const SystemParams& params,
                                     InferenceMode mode) {
  const double four_ktdf = 4.0 * kBoltzmann * params.temp_eff * params.bandwidth;
  double peer = 0.0;
  if (mode == InferenceMode::current) {
    if (!(variance > 0.0))
      throw DegenerateEstimate("current variance is zero; no noise to invert");
    peer = four_ktdf / variance - own_r;
  } else {
    const double denom = four_ktdf * own_r - variance;
    if (!(denom > 0.0))
      throw DegenerateEstimate("voltage variance reaches the open-circuit maximum 4kT df R_own");
    peer = variance * own_r / denom;
  }
  if (!(peer > 0.0) || !std::isfinite(peer))
    throw DegenerateEstimate("inverted peer resistance is not positive");
  return peer;
}

double infer_peer_resistance(const WireTrace& trace, double own_r, const SystemParams& params,
                             InferenceMode mode) {
  if (own_r != params.r_low && own_r != params.r_high)
    throw InvalidParameter("own resistance must be r_low or r_high");
  const auto& samples = mode == InferenceMode::voltage ? trace.u : trace.i;
  if (samples.size() < 2) throw InsufficientData("need at least two samples for a variance");
  return peer_resistance_from_variance(sample_moments(samples).variance, own_r, params, mode);
}

double snap_resistance(double r, const SystemParams& params) {
  const double boundary = std::sqrt(params.r_low * params.r_high);
  return r < boundary ? params.r_low : params.r_high;
}

double inference_accuracy(const ExchangeRun& run, InferenceMode mode) {
  if (run.beps.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& bep : run.beps) {
    const auto [ra, rb] = resistors(bep.state, run.params);
    try {
      const double bob_view = snap_resistance(infer_peer_resistance(bep.trace, rb, run.params, mode),
                                              run.params);
      const double alice_view =
          snap_resistance(infer_peer_resistance(bep.trace, ra, run.params, mode), run.params);
      if (bob_view == ra && alice_view == rb) ++correct;
    } catch (const DegenerateEstimate&) {
    }
  }
  return static_cast<double>(correct) / static_cast<double>(run.beps.size());
}

}  // namespace kljn
