#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "kljn/analytic.hpp"
#include "kljn/defense.hpp"
#include "kljn/errors.hpp"
#include "kljn/eve.hpp"
#include "kljn/exchange.hpp"
#include "kljn/stats.hpp"

using namespace kljn;

namespace {

SystemParams running_example() {
  SystemParams p;
  p.u_dca = 0.2;
  p.u_dcb = 0.1;
  return p;
}

bool within_three_sigma_of_half(const GuessStats& s) {
  return std::abs(s.p - 0.5) <= 3.0 * std::sqrt(0.25 / s.n_tot);
}

}  // namespace

TEST_CASE("compensate_dc") {
  const auto p = running_example();
  const auto single = compensate_dc(p, CompensationMode::single);
  CHECK(single.u_dca == doctest::Approx(0.1));
  CHECK(single.u_dcb == 0.1);

  const auto both = compensate_dc(p, CompensationMode::both);
  CHECK(both.u_dca == 0.0);
  CHECK(both.u_dcb == 0.0);

  auto equal = p;
  equal.u_dca = equal.u_dcb = 0.4;
  CHECK(compensate_dc(equal, CompensationMode::single) == equal);
}

TEST_CASE("dc_block removes the DC current and the state dependence") {
  const auto p = running_example();
  CHECK(dc_block(p, BlockSide::none) == p);
  for (auto s : kAllStates) {
    CHECK(wire_dc_current(s, dc_block(p, BlockSide::none)) == wire_dc_current(s, p));
    CHECK(wire_dc_current(s, dc_block(p, BlockSide::bob)) == 0.0);
    CHECK(wire_dc_current(s, dc_block(p, BlockSide::alice)) == 0.0);
    CHECK(wire_dc_current(s, dc_block(p, BlockSide::both)) == 0.0);
    CHECK(wire_dc_voltage(s, dc_block(p, BlockSide::bob)) == doctest::Approx(0.2));
    CHECK(wire_dc_voltage(s, dc_block(p, BlockSide::alice)) == doctest::Approx(0.1));
    CHECK(wire_dc_voltage(s, dc_block(p, BlockSide::both)) == 0.0);
  }
  CHECK(dc_block(dc_block(p, BlockSide::alice), BlockSide::bob).dc_block == BlockSide::both);

  auto noiseless = dc_block(p, BlockSide::bob);
  noiseless.temp_eff = 0.0;
  noiseless.key_length = 50;
  for (const auto& bep : run_key_exchange(noiseless).beps)
    for (double i : bep.trace.i) CHECK(i == 0.0);
}

TEST_CASE("scale_noise") {
  const auto p = running_example();
  CHECK(scale_noise(p, 1.0) == p);
  CHECK(scale_noise(p, 100.0).temp_eff == doctest::Approx(100.0 * p.temp_eff));
  CHECK_THROWS_AS(scale_noise(p, 0.0), InvalidParameter);
  CHECK_THROWS_AS(scale_noise(p, -2.0), InvalidParameter);

  auto by_bandwidth = p;
  by_bandwidth.bandwidth *= 100.0;
  CHECK(predict(scale_noise(p, 100.0)).p_bit == doctest::Approx(predict(by_bandwidth).p_bit).epsilon(1e-12));
}

TEST_CASE("defense names") {
  CHECK(name({}) == "none");
  CHECK(name({DefenseKind::dc_block, BlockSide::bob, 1.0}) == "dc_block:bob");
  CHECK(name({DefenseKind::scale_noise, BlockSide::both, 100.0}) == "scale_noise:100");
}

TEST_CASE("every defense closes the leak") {
  SystemParams p;
  p.u_dca = 0.1;
  p.temp_eff = 1e12;
  REQUIRE(run_attack(run_key_exchange(p)).p > 0.95);

  for (const auto& action : {DefenseAction{DefenseKind::compensate_both},
                             DefenseAction{DefenseKind::compensate_single},
                             DefenseAction{DefenseKind::dc_block, BlockSide::bob},
                             DefenseAction{DefenseKind::dc_block, BlockSide::alice},
                             DefenseAction{DefenseKind::dc_block, BlockSide::both}}) {
    INFO(name(action));
    CHECK(within_three_sigma_of_half(run_attack(run_key_exchange(apply_defense(p, action)))));
  }
}

TEST_CASE("more noise pushes Eve towards guessing") {
  SystemParams p;
  p.u_dca = 0.1;
  p.temp_eff = temperature_for_success(p, 0.8);
  const auto before = run_attack(run_key_exchange(p));
  const auto after = run_attack(run_key_exchange(scale_noise(p, 100.0)));
  REQUIRE(before.p >= 0.7);
  CHECK(std::abs(after.p - 0.5) < std::abs(before.p - 0.5));
  CHECK(before.p - after.p > 3.0 * std::sqrt(before.p * (1.0 - before.p) / before.n_tot));
}

TEST_CASE("dc_loop_alarm") {
  SystemParams p;
  p.samples_per_bit = 10'000;
  p.key_length = 100;
  const std::size_t n = std::size_t{p.samples_per_bit} * p.key_length;
  const double threshold = default_alarm_threshold(p, n);

  auto traces_for = [](const SystemParams& params) {
    std::vector<WireTrace> out;
    for (auto& bep : run_key_exchange(params).beps) out.push_back(std::move(bep.trace));
    return out;
  };

  CHECK_FALSE(dc_loop_alarm(traces_for(p), threshold));

  auto leaking = p;
  leaking.u_dca = 0.1;
  CHECK(dc_loop_alarm(traces_for(leaking), threshold));
  CHECK_FALSE(dc_loop_alarm(traces_for(leaking), std::numeric_limits<double>::infinity()));
  CHECK_FALSE(dc_loop_alarm(traces_for(dc_block(leaking, BlockSide::bob)), threshold));
  CHECK_FALSE(dc_loop_alarm(traces_for(compensate_dc(leaking, CompensationMode::single)), threshold));

  CHECK_THROWS_AS(dc_loop_alarm(std::vector<WireTrace>{}, threshold), InsufficientData);
  CHECK_THROWS_AS(dc_loop_alarm(traces_for(p), 0.0), InvalidParameter);
}

TEST_CASE("alarm is sound and complete at its design point") {
  // A single LL loop, 10^6 samples: the default threshold separates
  // I_DC = 0 from I_DC = 10 standard errors.
  SystemParams p;
  p.samples_per_bit = 1'000'000;
  const double se = wire_current_rms(BitState::LL, p) / std::sqrt(double(p.samples_per_bit));
  const double threshold = default_alarm_threshold(p, p.samples_per_bit);

  auto leaking = p;
  leaking.u_dca = 10.0 * se * (2.0 * p.r_low);
  REQUIRE(wire_dc_current(BitState::LL, leaking) == doctest::Approx(10.0 * se));

  int false_results = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::vector<WireTrace> quiet{simulate_bep(BitState::LL, p, seed)};
    const std::vector<WireTrace> loud{simulate_bep(BitState::LL, leaking, seed + 500)};
    false_results += dc_loop_alarm(quiet, threshold);
    false_results += !dc_loop_alarm(loud, threshold);
  }
  CHECK(false_results <= 1);
}
