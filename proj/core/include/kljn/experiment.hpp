#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kljn/defense.hpp"
#include "kljn/params.hpp"

namespace kljn {

// 12 log-spaced points over [1e10, 1e17] K.
std::vector<double> default_temperature_sweep();

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view text);

struct ExperimentConfig {
  // temp_eff is replaced by each sweep temperature. Each grid point uses
  // u_dca = dU + base.u_dcb and u_dcb = base.u_dcb, so base.u_dcb sets the
  // common offset of the two sources.
  SystemParams base{};
  std::vector<double> temp_sweep = default_temperature_sweep();
  std::vector<double> delta_u_values{0.1, 0.2};
  std::vector<DefenseAction> defenses;  // "none" is always evaluated as well
  std::uint32_t replicate_count = 1;
  std::string output_path;
  ReportFormat format = ReportFormat::csv;
  unsigned threads = 1;  // 0 = hardware concurrency
};

// Throws ConfigError naming the offending field path.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);
void validate(const ExperimentConfig& config);

struct ReportRow {
  double temp_k = 0.0;
  double delta_u_v = 0.0;
  std::string defense;
  double p_mc = 0.0;
  double p_mc_stderr = 0.0;
  double p_analytic = 0.0;
  std::uint64_t n_undetermined = 0;
  std::uint64_t n_tot = 0;
  std::uint64_t seed = 0;

  bool operator==(const ReportRow&) const = default;
};

struct SweepReport {
  std::vector<ReportRow> rows;
  bool operator==(const SweepReport&) const = default;
};

// Defenses evaluated per grid point: "none" first, then config.defenses.
std::vector<DefenseAction> defense_grid(const ExperimentConfig& config);

// Parameters of one grid point, with the defense applied.
SystemParams grid_params(const ExperimentConfig& config, double temp, double delta_u,
                         const DefenseAction& defense, std::uint32_t replicate);

// Monte Carlo attack and analytic prediction over the full grid. Rows are
// ordered by (delta_u, defense, replicate, temperature) independent of the
// thread count. Replicate r uses master seed base.master_seed + r.
SweepReport run_experiment(const ExperimentConfig& config);

struct PredictionRow {
  double temp_k = 0.0;
  double delta_u_v = 0.0;
  std::string defense;
  double q_lh = 0.0;
  double q_hl = 0.0;
  double u_eff_v = 0.0;
  double p_analytic = 0.0;
};

std::vector<PredictionRow> predict_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kReportHeader =
    "temp_k,delta_u_v,defense,p_mc,p_mc_stderr,p_analytic,n_undetermined,n_tot,seed";

std::string emit_report(const SweepReport& report, ReportFormat format);
std::string emit_predictions(const std::vector<PredictionRow>& rows, ReportFormat format);

SweepReport parse_report_csv(std::string_view text);
SweepReport parse_report_json(std::string_view text);

// Throws IoError if the file cannot be written.
void write_text_file(const std::string& path, std::string_view text);

}  // namespace kljn
