#include <doctest.h>

#include <array>
#include <cmath>

#include "kljn/errors.hpp"
#include "kljn/exchange.hpp"

using namespace kljn;

TEST_CASE("draw_bit_state is reproducible") {
  std::array<BitState, 4> first{}, second{};
  for (int k = 0; k < 4; ++k) {
    first[k] = draw_bit_state(42, k);
    second[k] = draw_bit_state(42, k);
  }
  CHECK(first == second);
}

TEST_CASE("draw_bit_state is uniform") {
  std::array<int, 4> counts{};
  constexpr int kDraws = 100'000;
  for (int k = 0; k < kDraws; ++k) ++counts[static_cast<int>(draw_bit_state(7, k))];
  for (int c : counts) CHECK(std::abs(c / double(kDraws) - 0.25) <= 0.01);
}

TEST_CASE("distinct seeds give distinct state sequences") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    bool differs = false;
    for (int k = 0; k < 32 && !differs; ++k) differs = draw_bit_state(s, k) != draw_bit_state(s + 1, k);
    CHECK(differs);
  }
}

TEST_CASE("peer resistance from exact moments") {
  const SystemParams p;
  const double four_ktdf = 4.0 * kBoltzmann * p.temp_eff * p.bandwidth;

  CHECK(peer_resistance_from_variance(four_ktdf / 11000.0, 1000.0, p, InferenceMode::current) ==
        doctest::Approx(10000.0).epsilon(1e-12));
  CHECK(peer_resistance_from_variance(four_ktdf * 500.0, 1000.0, p, InferenceMode::voltage) ==
        doctest::Approx(1000.0).epsilon(1e-12));
  // all four combinations, both modes, both viewpoints
  for (double ra : {p.r_low, p.r_high}) {
    for (double rb : {p.r_low, p.r_high}) {
      const double var_u = four_ktdf * ra * rb / (ra + rb);
      const double var_i = four_ktdf / (ra + rb);
      CHECK(peer_resistance_from_variance(var_u, ra, p, InferenceMode::voltage) ==
            doctest::Approx(rb).epsilon(1e-9));
      CHECK(peer_resistance_from_variance(var_i, rb, p, InferenceMode::current) ==
            doctest::Approx(ra).epsilon(1e-9));
    }
  }
}

TEST_CASE("zero-noise trace is a degenerate estimate") {
  SystemParams p;
  p.temp_eff = 0.0;
  p.u_dca = 0.2;
  const auto t = simulate_bep(BitState::LH, p, 1);
  CHECK_THROWS_AS(infer_peer_resistance(t, p.r_low, p, InferenceMode::voltage), DegenerateEstimate);
  CHECK_THROWS_AS(infer_peer_resistance(t, p.r_low, p, InferenceMode::current), DegenerateEstimate);
}

TEST_CASE("infer_peer_resistance rejects a non-public own resistance") {
  const SystemParams p;
  const auto t = simulate_bep(BitState::LH, p, 1);
  CHECK_THROWS_AS(infer_peer_resistance(t, 4700.0, p, InferenceMode::voltage), InvalidParameter);
}

TEST_CASE("snap_resistance uses the geometric midpoint") {
  const SystemParams p;
  CHECK(snap_resistance(3162.0, p) == p.r_low);
  CHECK(snap_resistance(3163.0, p) == p.r_high);
  CHECK(snap_resistance(1.0, p) == p.r_low);
  CHECK(snap_resistance(1e9, p) == p.r_high);
}

TEST_CASE("run_key_exchange") {
  SystemParams p;
  p.u_dca = 0.1;
  const auto run = run_key_exchange(p);
  REQUIRE(run.beps.size() == 700);
  std::size_t retained = 0;
  for (const auto& bep : run.beps) {
    CHECK(bep.retained == (bep.state == BitState::LH || bep.state == BitState::HL));
    CHECK(bep.trace.truth == bep.state);
    CHECK(bep.trace.u.size() == p.samples_per_bit);
    retained += bep.retained;
  }
  CHECK(std::abs(static_cast<double>(retained) - 350.0) <= 3.0 * std::sqrt(700 * 0.25));

  const auto again = run_key_exchange(p);
  bool identical = true;
  for (std::size_t k = 0; k < run.beps.size(); ++k)
    identical = identical && run.beps[k].state == again.beps[k].state &&
                run.beps[k].trace.u == again.beps[k].trace.u &&
                run.beps[k].trace.i == again.beps[k].trace.i;
  CHECK(identical);
}

TEST_CASE("forced LL period is discarded") {
  SystemParams p;
  const std::array states{BitState::LL};
  const auto run = run_key_exchange(p, states);
  REQUIRE(run.beps.size() == 1);
  CHECK(run.params.key_length == 1);
  CHECK_FALSE(run.beps[0].retained);
}

TEST_CASE("legitimate parties infer each other's resistor") {
  SystemParams p;
  p.samples_per_bit = 10'000;
  p.key_length = 200;
  p.u_dca = 0.2;
  p.u_dcb = -0.1;
  CHECK(inference_accuracy(run_key_exchange(p), InferenceMode::voltage) >= 0.99);
  CHECK(inference_accuracy(run_key_exchange(p), InferenceMode::current) >= 0.99);
}
