#include "kljn/physics.hpp"

#include <cmath>

#include "kljn/errors.hpp"
#include "kljn/rng.hpp"

namespace kljn {

double johnson_rms(double r, double t, double df) {
  if (!(r > 0.0)) throw InvalidParameter("johnson_rms: resistance must be positive");
  if (!(df > 0.0)) throw InvalidParameter("johnson_rms: bandwidth must be positive");
  if (!(t >= 0.0)) throw InvalidParameter("johnson_rms: temperature must be nonnegative");
  return std::sqrt(4.0 * kBoltzmann * t * r * df);
}

DcSources effective_sources(const SystemParams& p) {
  switch (p.dc_block) {
    case BlockSide::none: return {p.u_dca, p.u_dcb};
    case BlockSide::alice: return {p.u_dcb, p.u_dcb};
    case BlockSide::bob: return {p.u_dca, p.u_dca};
    case BlockSide::both: return {0.0, 0.0};
  }
  return {p.u_dca, p.u_dcb};
}

double wire_dc_voltage(BitState state, const SystemParams& params) {
  const auto [ra, rb] = resistors(state, params);
  const auto src = effective_sources(params);
  return (rb * src.alice + ra * src.bob) / (ra + rb);
}

double wire_dc_current(BitState state, const SystemParams& params) {
  const auto [ra, rb] = resistors(state, params);
  const auto src = effective_sources(params);
  return (src.alice - src.bob) / (ra + rb);
}

double wire_ac_rms(BitState state, const SystemParams& params) {
  const auto [ra, rb] = resistors(state, params);
  return johnson_rms(ra * rb / (ra + rb), params.temp_eff, params.bandwidth);
}

double wire_current_rms(BitState state, const SystemParams& params) {
  const auto [ra, rb] = resistors(state, params);
  return johnson_rms(ra + rb, params.temp_eff, params.bandwidth) / (ra + rb);
}

UnitNoise draw_unit_noise(std::uint64_t seed, std::size_t n) {
  // Two engines so Alice's draws do not depend on how many Bob consumed.
  Engine alice_rng(derive_seed(seed, 0, Stream::alice));
  Engine bob_rng(derive_seed(seed, 0, Stream::bob));
  std::normal_distribution<double> gauss(0.0, 1.0);

  UnitNoise noise;
  noise.alice.resize(n);
  noise.bob.resize(n);
  for (auto& z : noise.alice) z = gauss(alice_rng);
  gauss.reset();
  for (auto& z : noise.bob) z = gauss(bob_rng);
  return noise;
}

WireTrace compose_trace(BitState state, const SystemParams& params,
                        std::span<const double> unit_alice, std::span<const double> unit_bob) {
  if (unit_alice.size() != unit_bob.size())
    throw InvalidParameter("compose_trace: noise streams differ in length");

  const auto [ra, rb] = resistors(state, params);
  const auto src = effective_sources(params);
  const double rms_a = johnson_rms(ra, params.temp_eff, params.bandwidth);
  const double rms_b = johnson_rms(rb, params.temp_eff, params.bandwidth);
  const double loop_r = ra + rb;
  const double i_dc = (src.alice - src.bob) / loop_r;

  WireTrace trace;
  trace.truth = state;
  trace.u.resize(unit_alice.size());
  trace.i.resize(unit_alice.size());
  for (std::size_t k = 0; k < unit_alice.size(); ++k) {
    const double u_an = rms_a * unit_alice[k];
    const double u_bn = rms_b * unit_bob[k];
    const double i = i_dc + (u_an - u_bn) / loop_r;
    trace.i[k] = i;
    trace.u[k] = i * rb + u_bn + src.bob;
  }
  return trace;
}

WireTrace simulate_bep(BitState state, const SystemParams& params, std::uint64_t seed) {
  const auto noise = draw_unit_noise(seed, params.samples_per_bit);
  return compose_trace(state, params, noise.alice, noise.bob);
}

}  // namespace kljn
