#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "kljn/analytic.hpp"
#include "kljn/defense.hpp"
#include "kljn/eve.hpp"
#include "kljn/exchange.hpp"
#include "kljn/stats.hpp"

namespace kljn::tools {

namespace {

SystemParams leaking(double temp) {
  SystemParams p;
  p.u_dca = 0.2;
  p.temp_eff = temp;
  return p;
}

bool near_half(const GuessStats& s) { return std::abs(s.p - 0.5) <= 3.0 * std::sqrt(0.25 / s.n_tot); }

bool loop_identity() {
  auto p = leaking(1e12);
  p.u_dcb = -0.05;
  for (auto s : kAllStates) {
    const auto noise = draw_unit_noise(11, 10'000);
    const auto t = compose_trace(s, p, noise.alice, noise.bob);
    const auto rb = resistors(s, p).r_b;
    const double rms_b = johnson_rms(rb, p.temp_eff, p.bandwidth);
    for (std::size_t k = 0; k < t.u.size(); ++k) {
      const double u_bn = rms_b * noise.bob[k];
      const double scale = std::abs(t.u[k]) + std::abs(t.i[k] * rb) + std::abs(u_bn) + std::abs(p.u_dcb);
      if (std::abs(t.u[k] - t.i[k] * rb - u_bn - p.u_dcb) > 1e-12 * scale) return false;
    }
  }
  return true;
}

bool ordering() {
  SystemParams p;
  for (double a : {-0.3, 0.0, 0.2})
    for (double b : {-0.1, 0.0, 0.4}) {
      p.u_dca = a;
      p.u_dcb = b;
      if ((wire_dc_voltage(BitState::LH, p) >= wire_dc_voltage(BitState::HL, p)) != (a >= b)) return false;
    }
  return true;
}

bool shift_invariance() {
  const auto base = leaking(2e13);
  auto shifted = base;
  shifted.u_dca += 0.35;
  shifted.u_dcb += 0.35;
  const auto a = execute_attack(run_key_exchange(base));
  const auto b = execute_attack(run_key_exchange(shifted));
  return a.outcomes == b.outcomes && a.stats == b.stats;
}

bool separation_regime() { return run_attack(run_key_exchange(leaking(1e6))).p == 1.0; }

bool current_null() { return near_half(run_current_attack(run_key_exchange(leaking(1e12)))); }

bool compensation_closes_leak() {
  return near_half(run_attack(run_key_exchange(compensate_dc(leaking(1e12), CompensationMode::single))));
}

bool dc_block_closes_leak() {
  return near_half(run_attack(run_key_exchange(dc_block(leaking(1e12), BlockSide::bob))));
}

bool analytic_agrees() {
  const auto p = leaking(1.5e13);
  const auto s = run_attack(run_key_exchange(p));
  const double pa = predict(p).p_bit;
  return std::abs(s.p - pa) <= 3.0 * std::sqrt(pa * (1.0 - pa) / s.n_tot);
}

bool erf_symmetry() {
  for (double x = 0.0; x < 6.0; x += 0.25)
    if (kljn::erf(-x) != -kljn::erf(x)) return false;
  return kljn::erf(0.0) == 0.0 && std::abs(kljn::erf(1.0) - 0.8427007929497149) < 1e-12;
}

}  // namespace

bool run_selftest(std::ostream& out) {
  const std::vector<std::pair<const char*, std::function<bool()>>> checks = {
      {"loop identity", loop_identity},
      {"LH/HL DC ordering", ordering},
      {"common-shift invariance", shift_invariance},
      {"low-noise attack succeeds", separation_regime},
      {"current threshold is blind", current_null},
      {"Monte Carlo matches closed form", analytic_agrees},
      {"single-side compensation closes the leak", compensation_closes_leak},
      {"DC block closes the leak", dc_block_closes_leak},
      {"erf symmetry", erf_symmetry},
  };
  bool all = true;
  for (const auto& [label, check] : checks) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception& e) {
      out << "  (" << e.what() << ")\n";
    }
    out << (ok ? "ok    " : "FAIL  ") << label << '\n';
    all = all && ok;
  }
  return all;
}

}  // namespace kljn::tools
