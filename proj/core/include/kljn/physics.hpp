#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kljn/params.hpp"

namespace kljn {

// Band-limited rms of the Johnson noise of `r` at temperature `t`:
// sqrt(4 k t r df). Throws InvalidParameter for r <= 0, df <= 0 or t < 0.
double johnson_rms(double r, double t, double df);

// DC sources as seen by the loop. Identical to (u_dca, u_dcb) unless a
// DC block is present, in which case the capacitor voltage is folded into
// the blocked side so that no DC current flows.
struct DcSources {
  double alice;
  double bob;
};
DcSources effective_sources(const SystemParams& params);

// U_DCw = (r_b u_dca + r_a u_dcb) / (r_a + r_b)
double wire_dc_voltage(BitState state, const SystemParams& params);
// I_DC = (u_dca - u_dcb) / (r_a + r_b), positive from Alice to Bob.
double wire_dc_current(BitState state, const SystemParams& params);
// rms of the AC wire voltage, sqrt(4 k T df * r_a r_b / (r_a + r_b)).
double wire_ac_rms(BitState state, const SystemParams& params);
// rms of the AC wire current, sqrt(4 k T df / (r_a + r_b)).
double wire_current_rms(BitState state, const SystemParams& params);

// Sampled wire voltage/current over one bit exchange period. `truth` is the
// hidden resistor combination; attack code must not read it.
struct WireTrace {
  std::vector<double> u;
  std::vector<double> i;
  BitState truth = BitState::LL;
};

// Independent standard-normal draws for Alice's and Bob's noise generators.
struct UnitNoise {
  std::vector<double> alice;
  std::vector<double> bob;
};
UnitNoise draw_unit_noise(std::uint64_t seed, std::size_t n);

// Builds a trace from unit-variance noise: each end's generator is scaled by
// johnson_rms of its connected resistor, then
//   I = I_DC + (U_An - U_Bn) / (r_a + r_b),  U = I r_b + U_Bn + u_dcb.
WireTrace compose_trace(BitState state, const SystemParams& params,
                        std::span<const double> unit_alice, std::span<const double> unit_bob);

// samples_per_bit samples, deterministic in `seed`.
WireTrace simulate_bep(BitState state, const SystemParams& params, std::uint64_t seed);

}  // namespace kljn
