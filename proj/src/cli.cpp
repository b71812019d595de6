/*
 * SPDX-FileCopyrightText: Copyright 2026 The sttsca Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sttsca/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sttsca/attack.hpp"
#include "sttsca/config.hpp"
#include "sttsca/defense.hpp"
#include "sttsca/errors.hpp"
#include "sttsca/io.hpp"
#include "sttsca/trace.hpp"
#include "sttsca/variation.hpp"

namespace sttsca {

namespace {

namespace fs = std::filesystem;

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::size_t threads = 1;
};

struct Context {
  RunConfig config;
  std::string hash;
  fs::path out;
  std::size_t threads = 1;
  std::ostream& stdout_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw OutputError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw OutputError("short write to " + path.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

void write_sidecar(const Context& ctx, const fs::path& file, const nlohmann::json& extra = nlohmann::json::object()) {
  write_json(fs::path(file.string() + ".meta.json"), metadata_json(ctx.hash, ctx.config.seed, extra));
}

Word parse_word(const std::string& text, std::optional<std::size_t> width) {
  if (text.starts_with("0x") || text.starts_with("0X")) {
    if (!width) throw ConfigError("hex word '" + text + "' needs --width");
    return Word::from_hex(text, *width);
  }
  Word w = Word::from_binary(text);
  if (width && w.width() != *width)
    throw ConfigError("word '" + text + "' has width " + std::to_string(w.width()) + ", expected " +
                      std::to_string(*width));
  return w;
}

// "4..64", "4,8,16" or a mix like "4,8..12".
std::vector<int> parse_widths(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [](const std::string& s) {
    const double v = parse_double(s);
    if (v != std::floor(v)) throw ParseError("width '" + s + "' is not an integer");
    return static_cast<int>(v);
  };
  while (std::getline(ss, item, ',')) {
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      const int lo = to_int(item.substr(0, dots));
      const int hi = to_int(item.substr(dots + 2));
      if (hi < lo) throw ParseError("empty width range '" + item + "'");
      for (int w = lo; w <= hi; ++w) out.push_back(w);
    } else {
      out.push_back(to_int(item));
    }
  }
  if (out.empty()) throw ParseError("no widths given");
  return out;
}

// "start:stop:step", inclusive of stop when it lies on the grid.
std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ':')) parts.push_back(p);
  if (parts.size() != 3) throw ParseError("range must be start:stop:step, got '" + text + "'");
  const double a = parse_double(parts[0]);
  const double b = parse_double(parts[1]);
  const double step = parse_double(parts[2]);
  if (!(step > 0.0) || b < a) throw ParseError("range needs stop >= start and step > 0");
  const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + step * static_cast<double>(i);
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, T (*parse)(std::string_view)) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse(item));
  return out;
}

EncodingScheme parse_scheme_item(std::string_view s) { return EncodingScheme::parse(s); }
DriverKind parse_driver_item(std::string_view s) { return parse_driver(s); }

// device

void run_device(Context& ctx) {
  const RunConfig& c = ctx.config;
  const DeviceParams& d = c.device;
  const Environment env = c.environment();
  const double delta = thermal_stability(d, c.temperature);
  const RetentionTime ret = retention_time(delta, c.retention);
  nlohmann::json j = {
      {"temperature_K", c.temperature},
      {"delta", delta},
      {"retention_s", ret.seconds},
      {"retention_years", ret.seconds / kSecondsPerYear},
      {"retention_saturated", ret.saturated},
      {"write_latency_p_to_ap_s", write_latency(delta, d.v_supply, Direction::PToAP, d)},
      {"write_latency_ap_to_p_s", write_latency(delta, d.v_supply, Direction::APToP, d)},
      {"r_low_ohm", resistance(BitState::P, d)},
      {"r_high_ohm", resistance(BitState::AP, d)},
      {"write_current_p_A", cell_current(BitState::P, CellMode::Write, d)},
      {"write_current_ap_A", cell_current(BitState::AP, CellMode::Write, d)},
      {"read_current_p_A", cell_current(BitState::P, CellMode::Read, d)},
      {"read_current_ap_A", cell_current(BitState::AP, CellMode::Read, d)},
      {"level_gap_A", level_gap(d)},
      {"wordline_pulse_s", env.wordline_pulse},
      {"config_hash", ctx.hash},
      {"seed", c.seed},
  };
  const fs::path file = ctx.out / "device.json";
  write_json(file, j);
  write_sidecar(ctx, file);
  ctx.stdout_ << std::setprecision(6) << "delta            " << delta << "\n"
              << "retention        " << ret.seconds / kSecondsPerYear << " years\n"
              << "write latency    " << j["write_latency_p_to_ap_s"].get<double>() * 1e9 << " ns (P->AP), "
              << j["write_latency_ap_to_p_s"].get<double>() * 1e9 << " ns (AP->P)\n"
              << "write currents   " << j["write_current_p_A"].get<double>() * 1e6 << " / "
              << j["write_current_ap_A"].get<double>() * 1e6 << " uA\n";
}

// mc

struct McOptions {
  std::size_t count = 5000;
  double population = static_cast<double>(kEightMegabyteBits);
  std::size_t bins = 50;
};

void run_mc(Context& ctx, const McOptions& opt) {
  const RunConfig& c = ctx.config;
  const PvSample sample = sample_devices(c.device, c.pv, opt.count, c.seed);
  nlohmann::json tails = {{"config_hash", ctx.hash}, {"seed", c.seed}, {"count", opt.count}};
  for (LatencyKind kind : {LatencyKind::Write, LatencyKind::Read}) {
    const std::string name = kind == LatencyKind::Write ? "write" : "read";
    const Eigen::VectorXd values = latency_values(sample, c.temperature, kind, c.read);
    const LatencySummary summary = summarize(values, opt.bins);
    const fs::path hist = ctx.out / ("mc_" + name + "_histogram.csv");
    std::ostringstream csv;
    write_histogram_csv(csv, summary.histogram);
    write_text(hist, csv.str());
    write_sidecar(ctx, hist, {{"kind", name}, {"count", opt.count}});
    nlohmann::json entry = {{"mean", summary.mean}, {"sd", summary.sd}, {"min", summary.min}, {"max", summary.max}};
    if (opt.count >= kEvtMinSamples) {
      const TailEstimate t = evt_extrapolate(values, static_cast<std::uint64_t>(opt.population));
      entry["tail"] = tail_json(t);
      ctx.stdout_ << name << ": mean " << summary.mean * 1e9 << " ns, sample max/mean " << summary.max / summary.mean
                  << ", extrapolated max/mean " << t.ratio_max_to_mean << " (gaussian "
                  << t.gaussian_max / t.mean << ")\n";
    }
    tails[name] = entry;
  }
  const fs::path file = ctx.out / "mc_tail.json";
  write_json(file, tails);
  write_sidecar(ctx, file);
}

// trace

struct TraceOptions {
  std::string old_word;
  std::string new_word;
  std::optional<std::size_t> width;
  std::optional<double> noise;
  bool read = false;
  bool pv = false;
};

void run_trace(Context& ctx, const TraceOptions& opt) {
  const RunConfig& c = ctx.config;
  if (!opt.read && opt.old_word.empty()) throw ConfigError("trace needs --old for a write (or --read)");
  const Word new_data = parse_word(opt.new_word, opt.width);
  const Word old_data = opt.read ? new_data : parse_word(opt.old_word, opt.width ? opt.width : new_data.width());
  const Word enc_old = encode(old_data, c.scheme, derive_seed(c.seed, {stream::kEncode, 0}));
  const Word enc_new = encode(new_data, c.scheme, derive_seed(c.seed, {stream::kEncode, 1}));
  const std::size_t cells = enc_new.width();
  const std::vector<DeviceParams> devices =
      opt.pv ? sample_devices(c.device, c.pv, cells, c.seed).devices() : nominal_devices(c.device, cells);
  const Environment env = c.environment();
  const double noise = opt.noise.value_or(c.resolved_noise(cells));
  const std::uint64_t noise_seed = derive_seed(c.seed, {stream::kNoise});

  CurrentTrace trace;
  if (opt.read) {
    trace = synthesize_read_trace(enc_new, devices, env, noise, noise_seed, c.synth_options());
  } else {
    trace = synthesize_write_trace({enc_old, enc_new, c.driver, devices, env}, noise, noise_seed, c.synth_options());
  }
  const fs::path file = ctx.out / "trace.csv";
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  write_text(file, csv.str());
  std::ostringstream device_text;
  for (const auto& d : devices) device_text << format_double(d.k_u) << ',' << format_double(d.r_low) << ',' << format_double(d.tmr) << ';';
  write_sidecar(ctx, file,
                {{"width", cells},
                 {"data_width", new_data.width()},
                 {"kind", opt.read ? "read" : "write"},
                 {"driver", driver_name(c.driver.kind)},
                 {"scheme", c.scheme.name()},
                 {"old", enc_old.to_string()},
                 {"new", enc_new.to_string()},
                 {"noise_sigma_A", noise},
                 {"sample_rate_Hz", trace.sample_rate},
                 {"t0_s", trace.t0},
                 {"device_config_hash", content_hash(device_text.str())}});

  ctx.stdout_ << "samples " << trace.size() << ", pulse " << env.wordline_pulse * 1e9 << " ns\n";
  if (!opt.read && c.driver.kind == DriverKind::ConstantVoltage) {
    const AttackConfig ac = make_attack_config(cells, c.driver, c.device, env);
    ctx.stdout_ << "pre-switch window mean  " << sample_window(trace, ac.pre_switch.start, ac.pre_switch.end) * 1e6
                << " uA\npost-switch window mean " << sample_window(trace, ac.post_switch.start, trace.end_time()) * 1e6
                << " uA\n";
  }
}

// attack

struct AttackOptions {
  std::size_t width = 4;
  std::size_t trials = 1000;
  std::size_t traces = 1;
  std::optional<double> noise;
  bool pv = false;
};

void run_attack(Context& ctx, const AttackOptions& opt) {
  const RunConfig& c = ctx.config;
  const std::size_t cells = opt.width + static_cast<std::size_t>(c.scheme.overhead());
  const AttackConfig ac = make_attack_config(cells, c.driver, c.device, c.environment());
  CampaignOptions co;
  co.trials = opt.trials;
  co.noise_sigma = opt.noise.value_or(c.resolved_noise(cells));
  co.seed = c.seed;
  co.traces_per_trial = opt.traces;
  co.threads = ctx.threads;
  if (opt.pv) co.victim_pv = c.pv;
  co.synth = c.synth_options();
  const CampaignReport report = attack_campaign(ac, c.scheme, co);

  nlohmann::json j = campaign_json(report, ctx.hash);
  j["data_width"] = opt.width;
  j["scheme"] = c.scheme.name();
  j["driver"] = driver_name(c.driver.kind);
  j["traces_per_trial"] = opt.traces;
  j["noise_sigma_A"] = co.noise_sigma;
  const fs::path file = ctx.out / "campaign.json";
  write_json(file, j);
  write_sidecar(ctx, file);
  ctx.stdout_ << "accuracy old " << report.accuracy_old << ", new " << report.accuracy_new << ", mean effort "
              << report.mean_effort_bits << " bits\n";
}

// states

struct StatesOptions {
  std::string widths = "4..64";
  std::string schemes;
  std::string drivers;
};

void run_states(Context& ctx, const StatesOptions& opt) {
  const RunConfig& c = ctx.config;
  const std::vector<int> widths = parse_widths(opt.widths);
  const std::vector<EncodingScheme> schemes =
      opt.schemes.empty() ? std::vector<EncodingScheme>{c.scheme} : parse_list(opt.schemes, &parse_scheme_item);
  const std::vector<DriverKind> drivers =
      opt.drivers.empty() ? std::vector<DriverKind>{c.driver.kind} : parse_list(opt.drivers, &parse_driver_item);
  for (int w : widths)
    if (w < 1 || w > static_cast<int>(kMaxWordWidth)) throw ConfigError("width out of [1, 512]: " + std::to_string(w));
  const auto rows = defense_matrix(widths, schemes, drivers);
  const fs::path file = ctx.out / "defense_matrix.csv";
  std::ostringstream csv;
  write_defense_matrix_csv(csv, rows);
  write_text(file, csv.str());
  write_sidecar(ctx, file);
  ctx.stdout_ << rows.size() << " rows written to " << file.string() << "\n";
}

// sweep

struct SweepOptions {
  std::string var = "temperature";
  std::string range = "250:350:10";
  std::string metric = "write_latency";
};

void run_sweep(Context& ctx, const SweepOptions& opt) {
  const RunConfig& c = ctx.config;
  const DeviceParams& d = c.device;
  static const std::vector<std::string> metrics = {"delta", "retention", "write_latency", "write_current", "level_gap"};
  if (std::find(metrics.begin(), metrics.end(), opt.metric) == metrics.end())
    throw ConfigError("unknown sweep metric '" + opt.metric + "'");
  const std::vector<double> xs = parse_range(opt.range);

  // Each point reduces to a (device, delta, supply voltage) triple.
  auto evaluate = [&](const DeviceParams& dev, double delta, double volts) {
    if (opt.metric == "delta") return delta;
    if (opt.metric == "retention") return retention_time(delta, c.retention).seconds;
    if (opt.metric == "write_latency") return write_latency(delta, volts, Direction::PToAP, dev);
    if (opt.metric == "write_current") return cell_current(BitState::P, CellMode::Write, dev);
    return level_gap(dev);
  };

  std::ostringstream csv;
  csv << opt.var << ',' << opt.metric << '\n';
  for (double x : xs) {
    double y = 0.0;
    if (opt.var == "temperature") {
      y = evaluate(d, thermal_stability(d, x), d.v_supply);
    } else if (opt.var == "voltage") {
      y = evaluate(d, thermal_stability(d, c.temperature), x);
    } else if (opt.var == "delta") {
      y = evaluate(d, x, d.v_supply);
    } else if (opt.var == "volume") {
      const SnvmRow row = snvm_profile(d, {x}, c.temperature, c.retention).front();
      if (opt.metric == "delta") y = row.delta;
      else if (opt.metric == "retention") y = row.retention_s;
      else if (opt.metric == "write_latency") y = row.write_latency_s;
      else if (opt.metric == "write_current") y = row.write_current_a;
      else y = row.level_gap_a;
    } else {
      throw ConfigError("unknown sweep variable '" + opt.var + "' (temperature, voltage, delta, volume)");
    }
    csv << format_double(x) << ',' << format_double(y) << '\n';
  }
  const fs::path file = ctx.out / "sweep.csv";
  write_text(file, csv.str());
  write_sidecar(ctx, file, {{"var", opt.var}, {"metric", opt.metric}});
  ctx.stdout_ << xs.size() << " points written to " << file.string() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"STT-MRAM supply-current side-channel simulator", "sttsca"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "INI run configuration (defaults when omitted)");
  app.add_option("--seed", g.seed, "Root RNG seed (overrides run.seed)");
  app.add_option("--out", g.out_dir, "Output directory (overrides run.output_dir)");
  app.add_option("--threads", g.threads, "Worker threads for parallel work")->check(CLI::PositiveNumber);

  auto* device = app.add_subcommand("device", "Device anchors: delta, retention, latency, currents");

  McOptions mc;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo latency distributions and tail extrapolation");
  mc_cmd->add_option("--count", mc.count, "Monte Carlo sample size")->check(CLI::PositiveNumber);
  mc_cmd->add_option("--population", mc.population, "Extrapolation target population (bits)");
  mc_cmd->add_option("--bins", mc.bins, "Histogram bins")->check(CLI::PositiveNumber);

  TraceOptions tr;
  auto* trace = app.add_subcommand("trace", "Synthesize a supply-current trace");
  trace->add_option("--old", tr.old_word, "Previously stored word (binary, or 0x-prefixed hex with --width)");
  trace->add_option("--new", tr.new_word, "Word being written (or read with --read)")->required();
  trace->add_option("--width", tr.width, "Data word width");
  trace->add_option("--noise", tr.noise, "Noise sigma in A (default 1% of full scale)");
  trace->add_flag("--read", tr.read, "Synthesize a read of --new instead of a write");
  trace->add_flag("--pv", tr.pv, "Apply process variation to the cells");

  AttackOptions at;
  auto* attack = app.add_subcommand("attack", "Run an SPA/DPA attack campaign");
  attack->add_option("--width", at.width, "Data word width")->check(CLI::Range(1, 512));
  attack->add_option("--trials", at.trials, "Number of random transactions")->check(CLI::PositiveNumber);
  attack->add_option("--traces", at.traces, "Traces averaged per transaction (1 = SPA)")->check(CLI::PositiveNumber);
  attack->add_option("--noise", at.noise, "Noise sigma in A (default 1% of full scale)");
  attack->add_flag("--pv", at.pv, "Apply process variation to the victim cells");

  StatesOptions st;
  auto* states = app.add_subcommand("states", "Leakage-state counts per encoding, width and driver");
  states->add_option("--widths", st.widths, "Widths: a..b and/or comma list");
  states->add_option("--scheme", st.schemes, "Comma list of none, parity1, random:R (default run.scheme)");
  states->add_option("--driver", st.drivers, "Comma list of constant-voltage, constant-current");

  SweepOptions sw;
  auto* sweep = app.add_subcommand("sweep", "One-dimensional parameter sweep");
  sweep->add_option("--var", sw.var, "temperature | voltage | delta | volume");
  sweep->add_option("--range", sw.range, "start:stop:step");
  sweep->add_option("--metric", sw.metric, "delta | retention | write_latency | write_current | level_gap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config = g.config_path.empty() ? RunConfig{} : parse_config(g.config_path);
    if (g.seed) config.seed = *g.seed;
    if (g.out_dir) config.output_dir = *g.out_dir;
    validate(config);

    Context ctx{config, config_hash(config), fs::path(config.output_dir), g.threads, out};
    fs::create_directories(ctx.out);
    write_text(ctx.out / "effective_config.ini", effective_config_text(config));

    if (*device) run_device(ctx);
    else if (*mc_cmd) run_mc(ctx, mc);
    else if (*trace) run_trace(ctx, tr);
    else if (*attack) run_attack(ctx, at);
    else if (*states) run_states(ctx, st);
    else if (*sweep) run_sweep(ctx, sw);
    return kExitOk;
  } catch (const ConfigFileMissing& e) {
    err << "error: " << e.what() << "\n";
    return kExitMissingFile;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const WriteFailure& e) {
    err << "simulated " << e.what() << "\n";
    return kExitWriteFailure;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const OutputError& e) {
    err << "output error: " << e.what() << "\n";
    return kExitOutput;
  } catch (const fs::filesystem_error& e) {
    err << "output error: " << e.what() << "\n";
    return kExitOutput;
  }
}

}  // namespace sttsca
