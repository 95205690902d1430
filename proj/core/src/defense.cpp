#include "kljn/defense.hpp"

#include <cmath>
#include <sstream>

#include "kljn/errors.hpp"

namespace kljn {

std::string name(const DefenseAction& action) {
  switch (action.kind) {
    case DefenseKind::none: return "none";
    case DefenseKind::compensate_both: return "compensate_both";
    case DefenseKind::compensate_single: return "compensate_single";
    case DefenseKind::dc_block: return "dc_block:" + std::string(to_string(action.side));
    case DefenseKind::scale_noise: {
      std::ostringstream os;
      os << "scale_noise:" << action.factor;
      return os.str();
    }
  }
  return "unknown";
}

SystemParams compensate_dc(const SystemParams& params, CompensationMode mode) {
  auto out = params;
  if (mode == CompensationMode::both) {
    out.u_dca = 0.0;
    out.u_dcb = 0.0;
  } else {
    out.u_dca = out.u_dcb;
  }
  return out;
}

SystemParams dc_block(const SystemParams& params, BlockSide side) {
  auto out = params;
  if (side == BlockSide::none) return out;
  if (out.dc_block == BlockSide::none || out.dc_block == side)
    out.dc_block = side;
  else
    out.dc_block = BlockSide::both;
  return out;
}

SystemParams scale_noise(const SystemParams& params, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw InvalidParameter("scale_noise: factor must be positive and finite");
  auto out = params;
  out.temp_eff *= factor;
  return out;
}

SystemParams apply_defense(const SystemParams& params, const DefenseAction& action) {
  switch (action.kind) {
    case DefenseKind::none: return params;
    case DefenseKind::compensate_both: return compensate_dc(params, CompensationMode::both);
    case DefenseKind::compensate_single: return compensate_dc(params, CompensationMode::single);
    case DefenseKind::dc_block: return dc_block(params, action.side);
    case DefenseKind::scale_noise: return scale_noise(params, action.factor);
  }
  return params;
}

bool dc_loop_alarm(std::span<const WireTrace> traces, double threshold) {
  if (!(threshold > 0.0)) throw InvalidParameter("dc_loop_alarm: threshold must be positive");
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& t : traces) {
    for (double i : t.i) sum += i;
    n += t.i.size();
  }
  if (n == 0) throw InsufficientData("dc_loop_alarm: no current samples");
  return std::abs(sum / static_cast<double>(n)) > threshold;
}

double default_alarm_threshold(const SystemParams& params, std::size_t total_samples) {
  if (total_samples == 0) throw InvalidParameter("default_alarm_threshold: no samples");
  return 5.0 * wire_current_rms(BitState::LL, params) /
         std::sqrt(static_cast<double>(total_samples));
}

}  // namespace kljn
