#include "kljn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kljn/analytic.hpp"
#include "kljn/errors.hpp"
#include "kljn/eve.hpp"
#include "kljn/exchange.hpp"

namespace kljn {

using nlohmann::json;

std::vector<double> default_temperature_sweep() {
  constexpr int kPoints = 12;
  constexpr double kLogMin = 10.0;
  constexpr double kLogMax = 17.0;
  std::vector<double> temps(kPoints);
  for (int k = 0; k < kPoints; ++k)
    temps[k] = std::pow(10.0, kLogMin + (kLogMax - kLogMin) * k / (kPoints - 1));
  return temps;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  throw ConfigError("format", "expected 'csv' or 'json', got '" + std::string(text) + "'");
}

namespace {

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (auto k : known) found = found || key == k;
    if (!found) throw ConfigError(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json* child(const json& obj, std::string_view key) {
  auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

double read_number(const json& value, const std::string& path) {
  if (!value.is_number()) throw ConfigError(path, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

std::uint64_t read_count(const json& value, const std::string& path) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) throw ConfigError(path, "expected a nonnegative integer");
  throw ConfigError(path, "expected an integer");
}

std::string read_string(const json& value, const std::string& path) {
  if (!value.is_string()) throw ConfigError(path, "expected a string");
  return value.get<std::string>();
}

std::vector<double> read_number_list(const json& value, const std::string& path) {
  if (!value.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < value.size(); ++k)
    out.push_back(read_number(value[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<double> read_temperature_sweep(const json& value, const std::string& path) {
  if (value.is_array()) return read_number_list(value, path);
  if (!value.is_object())
    throw ConfigError(path, "expected an array or {log_min, log_max, points}");
  reject_unknown_keys(value, path, {"log_min", "log_max", "points"});
  for (auto key : {"log_min", "log_max", "points"})
    if (!child(value, key)) throw ConfigError(path + "." + key, "missing required field");
  const double lo = read_number(value["log_min"], path + ".log_min");
  const double hi = read_number(value["log_max"], path + ".log_max");
  const auto n = read_count(value["points"], path + ".points");
  if (n < 1 || n > 100000) throw ConfigError(path + ".points", "must be in [1, 100000]");
  std::vector<double> temps(n);
  for (std::uint64_t k = 0; k < n; ++k)
    temps[k] = std::pow(10.0, n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / (n - 1));
  return temps;
}

DefenseAction read_defense(const json& value, const std::string& path) {
  const bool is_object = value.is_object();
  if (!is_object && !value.is_string())
    throw ConfigError(path, "expected a defense name or object");
  if (is_object) reject_unknown_keys(value, path, {"kind", "side", "factor"});

  const json* kind_node = is_object ? child(value, "kind") : &value;
  if (!kind_node) throw ConfigError(path + ".kind", "missing required field");
  const auto kind = read_string(*kind_node, is_object ? path + ".kind" : path);

  DefenseAction action;
  if (kind == "none") {
    action.kind = DefenseKind::none;
  } else if (kind == "compensate_both") {
    action.kind = DefenseKind::compensate_both;
  } else if (kind == "compensate_single") {
    action.kind = DefenseKind::compensate_single;
  } else if (kind == "dc_block") {
    action.kind = DefenseKind::dc_block;
    const json* side = is_object ? child(value, "side") : nullptr;
    if (!side) throw ConfigError(path + ".side", "missing required field");
    try {
      action.side = parse_block_side(read_string(*side, path + ".side"));
    } catch (const InvalidParameter& e) {
      throw ConfigError(path + ".side", e.what());
    }
    if (action.side == BlockSide::none)
      throw ConfigError(path + ".side", "must be alice, bob or both");
  } else if (kind == "scale_noise") {
    action.kind = DefenseKind::scale_noise;
    const json* factor = is_object ? child(value, "factor") : nullptr;
    if (!factor) throw ConfigError(path + ".factor", "missing required field");
    action.factor = read_number(*factor, path + ".factor");
    if (!(action.factor > 0.0)) throw ConfigError(path + ".factor", "must be positive");
  } else {
    throw ConfigError(is_object ? path + ".kind" : path, "unknown defense '" + kind + "'");
  }
  return action;
}

void read_base(const json& node, SystemParams& base) {
  if (!node.is_object()) throw ConfigError("base", "expected an object");
  reject_unknown_keys(node, "base",
                      {"r_low", "r_high", "temp_eff", "bandwidth", "u_dca", "u_dcb",
                       "samples_per_bit", "key_length", "master_seed"});
  auto number = [&node](const char* key, double& out) {
    if (const json* v = child(node, key)) out = read_number(*v, std::string("base.") + key);
  };
  auto count32 = [&node](const char* key, std::uint32_t& out) {
    if (const json* v = child(node, key)) {
      const auto path = std::string("base.") + key;
      const auto x = read_count(*v, path);
      if (x > std::numeric_limits<std::uint32_t>::max()) throw ConfigError(path, "too large");
      out = static_cast<std::uint32_t>(x);
    }
  };
  number("r_low", base.r_low);
  number("r_high", base.r_high);
  number("temp_eff", base.temp_eff);
  number("bandwidth", base.bandwidth);
  number("u_dca", base.u_dca);
  number("u_dcb", base.u_dcb);
  count32("samples_per_bit", base.samples_per_bit);
  count32("key_length", base.key_length);
  if (const json* v = child(node, "master_seed")) base.master_seed = read_count(*v, "base.master_seed");
}

}  // namespace

void validate(const ExperimentConfig& config) {
  try {
    validate(config.base);
  } catch (const InvalidParameter& e) {
    throw ConfigError("base", e.what());
  }
  if (config.temp_sweep.empty()) throw ConfigError("temp_sweep", "must not be empty");
  for (std::size_t k = 0; k < config.temp_sweep.size(); ++k)
    if (!(config.temp_sweep[k] >= 0.0) || !std::isfinite(config.temp_sweep[k]))
      throw ConfigError("temp_sweep[" + std::to_string(k) + "]", "must be finite and nonnegative");
  if (config.delta_u_values.empty()) throw ConfigError("delta_u_values", "must not be empty");
  if (config.replicate_count < 1) throw ConfigError("replicate_count", "must be at least 1");
}

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "top level must be an object");
  reject_unknown_keys(doc, "",
                      {"base", "temp_sweep", "delta_u_values", "defenses", "replicate_count",
                       "output_path", "format", "threads"});

  ExperimentConfig config;
  if (const json* v = child(doc, "base")) read_base(*v, config.base);
  if (const json* v = child(doc, "temp_sweep")) config.temp_sweep = read_temperature_sweep(*v, "temp_sweep");
  if (const json* v = child(doc, "delta_u_values"))
    config.delta_u_values = read_number_list(*v, "delta_u_values");
  if (const json* v = child(doc, "defenses")) {
    if (!v->is_array()) throw ConfigError("defenses", "expected an array");
    for (std::size_t k = 0; k < v->size(); ++k)
      config.defenses.push_back(read_defense((*v)[k], "defenses[" + std::to_string(k) + "]"));
  }
  if (const json* v = child(doc, "replicate_count")) {
    const auto n = read_count(*v, "replicate_count");
    if (n > 1000000) throw ConfigError("replicate_count", "too large");
    config.replicate_count = static_cast<std::uint32_t>(n);
  }
  if (const json* v = child(doc, "output_path")) config.output_path = read_string(*v, "output_path");
  if (const json* v = child(doc, "format")) config.format = parse_report_format(read_string(*v, "format"));
  if (const json* v = child(doc, "threads")) {
    const auto n = read_count(*v, "threads");
    if (n > 4096) throw ConfigError("threads", "too large");
    config.threads = static_cast<unsigned>(n);
  }
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::vector<DefenseAction> defense_grid(const ExperimentConfig& config) {
  std::vector<DefenseAction> grid{DefenseAction{}};
  for (const auto& d : config.defenses)
    if (d.kind != DefenseKind::none) grid.push_back(d);
  return grid;
}

SystemParams grid_params(const ExperimentConfig& config, double temp, double delta_u,
                         const DefenseAction& defense, std::uint32_t replicate) {
  auto p = config.base;
  p.temp_eff = temp;
  p.u_dca = delta_u + config.base.u_dcb;
  p.u_dcb = config.base.u_dcb;
  p.master_seed = config.base.master_seed + replicate;
  return apply_defense(p, defense);
}

namespace {

struct GridPoint {
  double temp;
  double delta_u;
  DefenseAction defense;
  std::uint32_t replicate;
};

std::vector<GridPoint> enumerate_grid(const ExperimentConfig& config) {
  std::vector<GridPoint> grid;
  const auto defenses = defense_grid(config);
  for (double du : config.delta_u_values)
    for (const auto& d : defenses)
      for (std::uint32_t r = 0; r < config.replicate_count; ++r)
        for (double t : config.temp_sweep) grid.push_back({t, du, d, r});
  return grid;
}

std::string describe(const GridPoint& g) {
  std::ostringstream os;
  os << "grid point (temp=" << g.temp << " K, delta_u=" << g.delta_u
     << " V, defense=" << name(g.defense) << ", replicate=" << g.replicate << ")";
  return os.str();
}

// Evaluates fn(k) for k in [0, n) on up to `threads` workers; results are
// stored by index, so completion order never matters.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

SweepReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto grid = enumerate_grid(config);
  SweepReport report;
  report.rows.resize(grid.size());

  parallel_for(grid.size(), config.threads, [&](std::size_t k) {
    const auto& g = grid[k];
    const auto params = grid_params(config, g.temp, g.delta_u, g.defense, g.replicate);
    GuessStats stats;
    try {
      stats = run_attack(run_key_exchange(params));
    } catch (const InsufficientData& e) {
      throw InsufficientData(describe(g) + ": " + e.what());
    }
    auto& row = report.rows[k];
    row.temp_k = g.temp;
    row.delta_u_v = g.delta_u;
    row.defense = name(g.defense);
    row.p_mc = stats.p;
    row.p_mc_stderr = stats.n_tot == 0 ? std::numeric_limits<double>::quiet_NaN()
                                       : std::sqrt(stats.p * (1.0 - stats.p) / stats.n_tot);
    row.p_analytic = predict(params).p_bit;
    row.n_undetermined = stats.n_undetermined;
    row.n_tot = stats.n_tot;
    row.seed = params.master_seed;
  });
  return report;
}

std::vector<PredictionRow> predict_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<PredictionRow> rows;
  for (const auto& g : enumerate_grid(config)) {
    if (g.replicate != 0) continue;
    const auto pred = predict(grid_params(config, g.temp, g.delta_u, g.defense, 0));
    rows.push_back({g.temp, g.delta_u, name(g.defense), pred.q_lh, pred.q_hl, pred.u_eff, pred.p_bit});
  }
  return rows;
}

namespace {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json real_to_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double real_from_json(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_real(std::string_view field) {
  const std::string s(field);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw IoError("bad real field '" + s + "'");
  return x;
}

std::uint64_t parse_uint(std::string_view field) {
  const std::string s(field);
  char* end = nullptr;
  const auto x = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) throw IoError("bad integer field '" + s + "'");
  return x;
}

}  // namespace

std::string emit_report(const SweepReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    json arr = json::array();
    for (const auto& r : report.rows) {
      arr.push_back({{"temp_k", real_to_json(r.temp_k)},
                     {"delta_u_v", real_to_json(r.delta_u_v)},
                     {"defense", r.defense},
                     {"p_mc", real_to_json(r.p_mc)},
                     {"p_mc_stderr", real_to_json(r.p_mc_stderr)},
                     {"p_analytic", real_to_json(r.p_analytic)},
                     {"n_undetermined", r.n_undetermined},
                     {"n_tot", r.n_tot},
                     {"seed", r.seed}});
    }
    return arr.dump(2) + "\n";
  }

  std::string out(kReportHeader);
  out += '\n';
  for (const auto& r : report.rows) {
    out += format_real(r.temp_k) + ',' + format_real(r.delta_u_v) + ',' + r.defense + ',' +
           format_real(r.p_mc) + ',' + format_real(r.p_mc_stderr) + ',' +
           format_real(r.p_analytic) + ',' + std::to_string(r.n_undetermined) + ',' +
           std::to_string(r.n_tot) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

std::string emit_predictions(const std::vector<PredictionRow>& rows, ReportFormat format) {
  if (format == ReportFormat::json) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"temp_k", real_to_json(r.temp_k)},
                     {"delta_u_v", real_to_json(r.delta_u_v)},
                     {"defense", r.defense},
                     {"q_lh", real_to_json(r.q_lh)},
                     {"q_hl", real_to_json(r.q_hl)},
                     {"u_eff_v", real_to_json(r.u_eff_v)},
                     {"p_analytic", real_to_json(r.p_analytic)}});
    }
    return arr.dump(2) + "\n";
  }
  std::string out = "temp_k,delta_u_v,defense,q_lh,q_hl,u_eff_v,p_analytic\n";
  for (const auto& r : rows) {
    out += format_real(r.temp_k) + ',' + format_real(r.delta_u_v) + ',' + r.defense + ',' +
           format_real(r.q_lh) + ',' + format_real(r.q_hl) + ',' + format_real(r.u_eff_v) + ',' +
           format_real(r.p_analytic) + '\n';
  }
  return out;
}

SweepReport parse_report_csv(std::string_view text) {
  SweepReport report;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kReportHeader) throw IoError("report: unexpected CSV header");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 9) throw IoError("report line " + std::to_string(line_no) + ": expected 9 fields");
    report.rows.push_back({parse_real(f[0]), parse_real(f[1]), std::string(f[2]), parse_real(f[3]),
                           parse_real(f[4]), parse_real(f[5]), parse_uint(f[6]), parse_uint(f[7]),
                           parse_uint(f[8])});
  }
  if (!header_seen) throw IoError("report: missing CSV header");
  return report;
}

SweepReport parse_report_json(std::string_view text) {
  SweepReport report;
  try {
    const auto arr = json::parse(text.begin(), text.end());
    for (const auto& o : arr) {
      report.rows.push_back({real_from_json(o.at("temp_k")), real_from_json(o.at("delta_u_v")),
                             o.at("defense").get<std::string>(), real_from_json(o.at("p_mc")),
                             real_from_json(o.at("p_mc_stderr")), real_from_json(o.at("p_analytic")),
                             o.at("n_undetermined").get<std::uint64_t>(),
                             o.at("n_tot").get<std::uint64_t>(), o.at("seed").get<std::uint64_t>()});
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("report: ") + e.what());
  }
  return report;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace kljn
