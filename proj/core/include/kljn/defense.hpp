#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "kljn/params.hpp"
#include "kljn/physics.hpp"

namespace kljn {

enum class DefenseKind { none, compensate_both, compensate_single, dc_block, scale_noise };

struct DefenseAction {
  DefenseKind kind = DefenseKind::none;
  BlockSide side = BlockSide::both;  // dc_block only
  double factor = 1.0;               // scale_noise only, > 0

  bool operator==(const DefenseAction&) const = default;
};

// Stable label used in reports: "none", "compensate_both", "compensate_single",
// "dc_block:<side>", "scale_noise:<factor>".
std::string name(const DefenseAction& action);

enum class CompensationMode { both, single };

// Ideal tuning of added DC sources. `both` cancels each parasitic source;
// `single` retunes Alice's side only so that u_dca == u_dcb.
SystemParams compensate_dc(const SystemParams& params, CompensationMode mode);

// Ideal series capacitor at the given side(s). In steady state no DC current
// flows and the wire sits at the unblocked side's source (0 V if both ends
// are blocked), whatever the bit state.
SystemParams dc_block(const SystemParams& params, BlockSide side);

// Multiplies the effective noise temperature. Raising the bandwidth by the
// same factor is equivalent. Throws InvalidParameter for factor <= 0.
SystemParams scale_noise(const SystemParams& params, double factor);

SystemParams apply_defense(const SystemParams& params, const DefenseAction& action);

// DC loop current test: true iff |mean current over all samples| > threshold.
bool dc_loop_alarm(std::span<const WireTrace> traces, double threshold);

// 5x the standard error of the mean current after `total_samples` samples,
// taking the noisiest (LL) loop.
double default_alarm_threshold(const SystemParams& params, std::size_t total_samples);

}  // namespace kljn
