#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace kljn {

// Exact SI value, J/K.
inline constexpr double kBoltzmann = 1.380649e-23;

// Which end(s) carry an idealized series DC-blocking capacitor.
enum class BlockSide : std::uint8_t { none, alice, bob, both };

// Physical configuration of one KLJN run.
//
// The two DC sources may have either polarity. `dc_block` is normally left at
// `none`; defense::dc_block() is the intended way to set it.
struct SystemParams {
  double r_low = 1.0e3;      // R_L, ohm
  double r_high = 10.0e3;    // R_H, ohm
  double temp_eff = 1.0e12;  // effective noise temperature, K
  double bandwidth = 1.0e6;  // noise bandwidth, Hz
  double u_dca = 0.0;        // parasitic DC source at Alice, V
  double u_dcb = 0.0;        // parasitic DC source at Bob, V
  std::uint32_t samples_per_bit = 500;
  std::uint32_t key_length = 700;  // number of BEPs
  std::uint64_t master_seed = 1;
  BlockSide dc_block = BlockSide::none;

  bool operator==(const SystemParams&) const = default;
};

// Throws InvalidParameter describing the first violated invariant.
void validate(const SystemParams& params);

// Resistor combination of one BEP; first letter Alice, second Bob.
enum class BitState : std::uint8_t { LL = 0, LH = 1, HL = 2, HH = 3 };

inline constexpr std::array<BitState, 4> kAllStates = {BitState::LL, BitState::LH,
                                                       BitState::HL, BitState::HH};

struct ResistorPair {
  double r_a;
  double r_b;
};

constexpr bool alice_high(BitState s) { return s == BitState::HL || s == BitState::HH; }
constexpr bool bob_high(BitState s) { return s == BitState::LH || s == BitState::HH; }

// Only the unequal combinations carry a secure key bit.
constexpr bool is_secure(BitState s) { return s == BitState::LH || s == BitState::HL; }

constexpr BitState make_state(bool a_high, bool b_high) {
  return static_cast<BitState>((a_high ? 2 : 0) | (b_high ? 1 : 0));
}

// Alice <-> Bob exchange: LH <-> HL, LL and HH fixed.
constexpr BitState mirrored(BitState s) { return make_state(bob_high(s), alice_high(s)); }

inline ResistorPair resistors(BitState s, const SystemParams& p) {
  return {alice_high(s) ? p.r_high : p.r_low, bob_high(s) ? p.r_high : p.r_low};
}

std::string_view to_string(BitState s);
std::string_view to_string(BlockSide s);
BlockSide parse_block_side(std::string_view text);

}  // namespace kljn
