#include "kljn/params.hpp"

#include <cmath>
#include <string>

#include "kljn/errors.hpp"

namespace kljn {

void validate(const SystemParams& p) {
  if (!(p.r_low > 0.0) || !std::isfinite(p.r_low))
    throw InvalidParameter("r_low must be a positive finite resistance");
  if (!(p.r_high > p.r_low) || !std::isfinite(p.r_high))
    throw InvalidParameter("r_high must exceed r_low");
  if (!(p.temp_eff >= 0.0) || !std::isfinite(p.temp_eff))
    throw InvalidParameter("temp_eff must be finite and nonnegative");
  if (!(p.bandwidth > 0.0) || !std::isfinite(p.bandwidth))
    throw InvalidParameter("bandwidth must be positive and finite");
  if (!std::isfinite(p.u_dca) || !std::isfinite(p.u_dcb))
    throw InvalidParameter("DC source voltages must be finite");
  if (p.samples_per_bit < 1) throw InvalidParameter("samples_per_bit must be at least 1");
  if (p.key_length < 1) throw InvalidParameter("key_length must be at least 1");
}

std::string_view to_string(BitState s) {
  switch (s) {
    case BitState::LL: return "LL";
    case BitState::LH: return "LH";
    case BitState::HL: return "HL";
    case BitState::HH: return "HH";
  }
  return "?";
}

std::string_view to_string(BlockSide s) {
  switch (s) {
    case BlockSide::none: return "none";
    case BlockSide::alice: return "alice";
    case BlockSide::bob: return "bob";
    case BlockSide::both: return "both";
  }
  return "?";
}

BlockSide parse_block_side(std::string_view text) {
  for (auto side : {BlockSide::none, BlockSide::alice, BlockSide::bob, BlockSide::both})
    if (text == to_string(side)) return side;
  throw InvalidParameter("unknown block side '" + std::string(text) + "'");
}

}  // namespace kljn
