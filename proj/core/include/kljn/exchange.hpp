#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kljn/params.hpp"
#include "kljn/physics.hpp"

namespace kljn {

// Uniform over the four resistor combinations, deterministic per (seed, index).
BitState draw_bit_state(std::uint64_t seed, std::uint64_t index);

struct Bep {
  BitState state;
  WireTrace trace;
  bool retained;  // true iff state is LH or HL
};

struct ExchangeRun {
  SystemParams params;
  std::vector<Bep> beps;
};

// key_length BEPs with states from draw_bit_state(master_seed, k) and noise
// seeded by (master_seed, k).
ExchangeRun run_key_exchange(const SystemParams& params);

// Same, but with caller-chosen states; key_length is taken from `states`.
ExchangeRun run_key_exchange(const SystemParams& params, std::span<const BitState> states);

// Which spectrum a party inverts to find the other end's resistor.
enum class InferenceMode { voltage, current };

// Inverts the wire voltage or current noise spectrum for the peer resistance,
// using variance / bandwidth as the spectral estimate. Voltage mode:
//   var(u) own / (4kT df own - var(u));   current mode: 4kT df / var(i) - own.
// Throws DegenerateEstimate when the inversion has no positive solution.
double peer_resistance_from_variance(double variance, double own_r, const SystemParams& params,
                                     InferenceMode mode);

// Same inversion on a measured trace. The sample mean is removed first so
// parasitic DC does not bias the estimate.
double infer_peer_resistance(const WireTrace& trace, double own_r, const SystemParams& params,
                             InferenceMode mode);

// Nearest public resistor value in log space.
double snap_resistance(double r, const SystemParams& params);

// Fraction of BEPs in which both Alice and Bob snap to the other's resistor.
double inference_accuracy(const ExchangeRun& run, InferenceMode mode);

}  // namespace kljn
