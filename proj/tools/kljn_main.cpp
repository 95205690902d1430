// kljn: DC ground-loop attack simulator.
//
//   kljn run <config.json>      Monte Carlo + analytic sweep report
//   kljn predict <config.json>  analytic prediction only
//   kljn selftest               quick invariant checks
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kljn/errors.hpp"
#include "kljn/experiment.hpp"
#include "selftest.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

kljn::ExperimentConfig load_with_overrides(const std::string& path, const Overrides& o) {
  auto config = kljn::load_config(path);
  if (o.seed) config.base.master_seed = *o.seed;
  if (o.format) config.format = kljn::parse_report_format(*o.format);
  if (o.out) config.output_path = *o.out;
  if (o.threads) config.threads = *o.threads;
  return config;
}

void deliver(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    kljn::write_text_file(path, text);
}

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Master seed (overrides base.master_seed)");
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "Output path ('-' for stdout)");
  cmd->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KLJN key exchange under parasitic DC ground loops: attack simulator"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;

  auto* run = app.add_subcommand("run", "Run the Monte Carlo sweep and write a report");
  run->add_option("config", config_path, "JSON experiment config")->required();
  add_overrides(run, overrides);

  auto* predict = app.add_subcommand("predict", "Closed-form success prediction only");
  predict->add_option("config", config_path, "JSON experiment config")->required();
  add_overrides(predict, overrides);

  auto* selftest = app.add_subcommand("selftest", "Run the invariant self-test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*selftest) return kljn::tools::run_selftest(std::cout) ? 0 : kExitRuntime;

    const auto config = load_with_overrides(config_path, overrides);
    if (*run) {
      deliver(kljn::emit_report(kljn::run_experiment(config), config.format), config.output_path);
    } else {
      deliver(kljn::emit_predictions(kljn::predict_experiment(config), config.format), config.output_path);
    }
  } catch (const kljn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
