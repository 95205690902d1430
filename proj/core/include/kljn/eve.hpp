#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kljn/exchange.hpp"
#include "kljn/params.hpp"
#include "kljn/physics.hpp"

namespace kljn {

// Eve's passive attack on the parasitic DC loop.
//
// Eve sees only wire voltage and current samples plus the public parameters.
// She identifies LL periods from the noise statistics, estimates both DC
// sources from them, places a threshold at the midpoint of the LH and HL
// wire DC levels, and votes each secure bit by the fraction of voltage
// samples above it.

enum class AcClass { LL, HH, mixed };

// Resistances recovered from noise moments: the roots of
//   x^2 - S x + P = 0,  S = 4kT df / var(i),  P = var(u) / var(i).
struct ResistanceRoots {
  double low = 0.0;
  double high = 0.0;
  AcClass cls = AcClass::mixed;
};

// A negative discriminant is clamped to zero (double root S/2).
ResistanceRoots solve_resistances(double var_u, double var_i, const SystemParams& params);

inline constexpr std::size_t kMinClassifySamples = 100;

// Throws InsufficientData for traces shorter than kMinClassifySamples.
AcClass classify_state_from_ac(const WireTrace& trace, const SystemParams& params);

struct DcEstimates {
  double u_dca_hat = 0.0;
  double u_dcb_hat = 0.0;
  double e_a = 0.0;  // realized errors against the simulated truth; test use only
  double e_b = 0.0;
  std::size_t n_avg = 0;
};

// Time-averaged source estimates over all samples of `traces`, which Eve
// believes were taken in `known` (LL or HH) so r_a = r_b is known:
//   u_dcb = <U> - r_b <I>,   u_dca = <U> + r_a <I>.
DcEstimates estimate_dc_sources(std::span<const WireTrace> traces, const SystemParams& params,
                                BitState known = BitState::LL);

// Midpoint of the LH and HL wire DC levels, (u_dca + u_dcb) / 2.
double threshold_voltage(const DcEstimates& est);

enum class Polarity { a_greater, b_greater };
Polarity polarity_of(const DcEstimates& est);

enum class Guess { LH, HL, undetermined };

struct AttackOutcome {
  double g = 0.0;  // fraction of samples strictly above the threshold
  Guess guess = Guess::undetermined;
  std::optional<bool> correct;  // unset when undetermined or truth unknown

  bool operator==(const AttackOutcome&) const = default;
};

// Majority rule. With A's source higher, LH lifts the wire: LH iff g > 0.5.
// With B's higher the mapping flips. g == 0.5 exactly is undetermined.
AttackOutcome guess_bit(std::span<const double> samples, double threshold, Polarity polarity);
AttackOutcome guess_bit(const WireTrace& trace, double threshold, Polarity polarity);

struct GuessStats {
  std::size_t n_cor = 0;
  std::size_t n_tot = 0;  // determined guesses only
  std::size_t n_undetermined = 0;
  double p = 0.0;  // n_cor / n_tot, NaN if n_tot == 0

  bool operator==(const GuessStats& o) const {
    return n_cor == o.n_cor && n_tot == o.n_tot && n_undetermined == o.n_undetermined;
  }
};

GuessStats tally(std::span<const AttackOutcome> outcomes);

// Which wire quantity Eve thresholds. The current variant exists to show
// that the DC loop current carries no bit information.
enum class AttackChannel { voltage, current };

struct AttackResult {
  DcEstimates estimates;
  Polarity polarity = Polarity::a_greater;
  double threshold = 0.0;
  std::size_t calibration_beps = 0;
  std::vector<std::size_t> bep_index;  // retained BEP attacked by outcomes[k]
  std::vector<AttackOutcome> outcomes;
  GuessStats stats;
};

// Full pipeline: classify, pool LL BEPs, estimate, threshold, guess every
// retained BEP, score against ground truth. Throws InsufficientData when no
// LL period is found or no BEP was retained.
AttackResult execute_attack(const ExchangeRun& run, AttackChannel channel = AttackChannel::voltage);

GuessStats run_attack(const ExchangeRun& run);
GuessStats run_current_attack(const ExchangeRun& run);

}  // namespace kljn
