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

#include "sttsca/trace.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sttsca/errors.hpp"
#include "sttsca/rng.hpp"

namespace sttsca {

namespace {

// Sample-grid rounding slack, in samples.
constexpr double kGridEps = 1e-9;

Eigen::Index first_index_at_or_after(double t, double t0, double fs) {
  return static_cast<Eigen::Index>(std::max(0.0, std::ceil((t - t0) * fs - kGridEps)));
}

Eigen::Index last_index_at_or_before(double t, double t0, double fs) {
  return static_cast<Eigen::Index>(std::floor((t - t0) * fs + kGridEps));
}

Eigen::Index samples_for(double duration, double fs) {
  return static_cast<Eigen::Index>(std::floor(duration * fs + kGridEps)) + 1;
}

void add_noise(Eigen::VectorXd& samples, double sigma, std::uint64_t seed, const SynthOptions& options) {
  if (sigma < 0.0) throw DomainError("noise sigma must be >= 0");
  if (sigma == 0.0) return;
  Rng rng = make_stream(seed, {stream::kNoise});
  std::normal_distribution<double> noise(0.0, sigma);
  const double per_draw = options.sample_rate / std::min(options.noise_rate, options.sample_rate);
  Eigen::Index held_slot = -1;
  double held = 0.0;
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    const auto slot = static_cast<Eigen::Index>(std::floor(static_cast<double>(i) / per_draw + kGridEps));
    if (slot != held_slot) {
      held = noise(rng);
      held_slot = slot;
    }
    samples[i] = std::max(0.0, samples[i] + held);
  }
}

void check_options(const SynthOptions& options) {
  if (!(options.sample_rate > 0.0)) throw DomainError("sample rate must be > 0");
  if (options.smoothing_tau < 0.0) throw DomainError("smoothing time constant must be >= 0");
  if (!(options.noise_rate > 0.0)) throw DomainError("noise rate must be > 0");
}

}  // namespace

const char* driver_name(DriverKind kind) {
  return kind == DriverKind::ConstantVoltage ? "constant-voltage" : "constant-current";
}

DriverKind parse_driver(std::string_view text) {
  if (text == "constant-voltage" || text == "cv") return DriverKind::ConstantVoltage;
  if (text == "constant-current" || text == "cc") return DriverKind::ConstantCurrent;
  throw ConfigError("unknown driver '" + std::string(text) + "'");
}

void validate(const DriverMode& driver) {
  if (driver.kind == DriverKind::ConstantCurrent) {
    if (!(driver.i_write > 0.0)) throw ConfigError("driver.i_write must be > 0");
    if (!(driver.tau_cc_slow > 0.0)) throw ConfigError("driver.tau_cc_slow must be > 0");
  }
}

void validate(const Environment& env) {
  if (!(env.temperature > 0.0)) throw ConfigError("env.temperature must be > 0");
  if (!(env.magnetic_tamper_factor >= 1.0)) throw ConfigError("env.magnetic_tamper_factor must be >= 1");
  if (!(env.wordline_pulse > 0.0)) throw ConfigError("env.wordline_pulse must be > 0");
}

double design_pulse(const DeviceParams& nominal, const DriverMode& driver) {
  const double delta = thermal_stability(nominal, kReferenceTemperature);
  const double slowest = driver.kind == DriverKind::ConstantVoltage
                             ? write_latency(delta, nominal.v_supply, Direction::PToAP, nominal)
                             : driver.tau_cc_slow * delta / nominal.delta0;
  return 2.0 * slowest;
}

Environment make_environment(const DeviceParams& nominal, const DriverMode& driver, double temperature,
                             double tamper) {
  Environment env{temperature, tamper, design_pulse(nominal, driver)};
  validate(env);
  return env;
}

std::optional<double> per_bit_switch_time(bool old_bit, bool new_bit, const DeviceParams& device,
                                          const Environment& env, const DriverMode& driver,
                                          std::size_t bit_index) {
  if (old_bit == new_bit) return std::nullopt;
  validate(env);
  const Direction dir = new_bit ? Direction::PToAP : Direction::APToP;
  const double delta = thermal_stability(device, env.temperature);
  double t = 0.0;
  if (driver.kind == DriverKind::ConstantVoltage) {
    t = write_latency(delta, device.v_supply, dir, device);
  } else {
    const double d = dir == Direction::PToAP ? 1.0 : device.dir_asymmetry;
    t = driver.tau_cc_slow * (delta / device.delta0) * d;
  }
  t *= env.magnetic_tamper_factor;
  if (t > env.wordline_pulse) throw WriteFailure(bit_index, t, env.wordline_pulse);
  return t;
}

namespace {

void check_transaction(const WriteTransaction& txn) {
  if (txn.old_word.width() != txn.new_word.width())
    throw DomainError("old and new words differ in width");
  if (txn.devices.size() != txn.new_word.width())
    throw DomainError("device count " + std::to_string(txn.devices.size()) + " does not match word width " +
                      std::to_string(txn.new_word.width()));
  validate(txn.driver);
  validate(txn.env);
}

}  // namespace

std::vector<std::optional<double>> switch_times(const WriteTransaction& txn) {
  check_transaction(txn);
  std::vector<std::optional<double>> out(txn.new_word.width());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = per_bit_switch_time(txn.old_word[i], txn.new_word[i], txn.devices[i], txn.env, txn.driver, i);
  return out;
}

CurrentTrace synthesize_write_trace(const WriteTransaction& txn, double noise_sigma, std::uint64_t seed,
                                    const SynthOptions& options) {
  check_options(options);
  const auto times = switch_times(txn);

  CurrentTrace trace;
  trace.sample_rate = options.sample_rate;
  const Eigen::Index n = samples_for(txn.env.wordline_pulse, options.sample_rate);
  trace.samples = Eigen::VectorXd::Zero(n);

  if (txn.driver.kind == DriverKind::ConstantCurrent) {
    trace.samples.setConstant(txn.driver.i_write * static_cast<double>(txn.new_word.width()));
  } else {
    for (std::size_t i = 0; i < times.size(); ++i) {
      const DeviceParams& dev = txn.devices[i];
      const double i_old = cell_current(state_of(txn.old_word[i]), CellMode::Write, dev);
      const double i_new = cell_current(state_of(txn.new_word[i]), CellMode::Write, dev);
      if (!times[i]) {
        trace.samples.array() += i_new;
        continue;
      }
      const double ts = *times[i];
      const Eigen::Index k = std::min(first_index_at_or_after(ts, trace.t0, trace.sample_rate), n);
      trace.samples.head(k).array() += i_old;
      if (options.smoothing_tau == 0.0) {
        trace.samples.tail(n - k).array() += i_new;
      } else {
        for (Eigen::Index j = k; j < n; ++j) {
          const double dt = trace.time(static_cast<std::size_t>(j)) - ts;
          trace.samples[j] += i_new + (i_old - i_new) * std::exp(-dt / options.smoothing_tau);
        }
      }
    }
  }
  add_noise(trace.samples, noise_sigma, seed, options);
  return trace;
}

CurrentTrace synthesize_read_trace(const Word& word, const std::vector<DeviceParams>& devices,
                                   const Environment& env, double noise_sigma, std::uint64_t seed,
                                   const SynthOptions& options) {
  check_options(options);
  validate(env);
  if (devices.size() != word.width()) throw DomainError("device count does not match word width");
  double level = 0.0;
  for (std::size_t i = 0; i < word.width(); ++i) level += cell_current(state_of(word[i]), CellMode::Read, devices[i]);

  CurrentTrace trace;
  trace.sample_rate = options.sample_rate;
  trace.samples = Eigen::VectorXd::Constant(samples_for(env.wordline_pulse, options.sample_rate), level);
  add_noise(trace.samples, noise_sigma, seed, options);
  return trace;
}

std::size_t window_sample_count(const CurrentTrace& trace, double t_start, double t_end) {
  if (trace.size() == 0) return 0;
  const Eigen::Index lo = first_index_at_or_after(t_start, trace.t0, trace.sample_rate);
  const Eigen::Index hi =
      std::min(last_index_at_or_before(t_end, trace.t0, trace.sample_rate), trace.samples.size() - 1);
  return hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
}

double sample_window(const CurrentTrace& trace, double t_start, double t_end) {
  if (!(t_end > t_start)) throw DomainError("window end must be after window start");
  if (trace.size() == 0) throw DomainError("empty trace");
  const double slack = kGridEps / trace.sample_rate;
  if (t_start < trace.t0 - slack || t_end > trace.end_time() + slack)
    throw DomainError("window lies outside the trace");
  const Eigen::Index lo = first_index_at_or_after(t_start, trace.t0, trace.sample_rate);
  const std::size_t count = window_sample_count(trace, t_start, t_end);
  if (count == 0) throw DomainError("window contains no samples");
  return trace.samples.segment(lo, static_cast<Eigen::Index>(count)).mean();
}

}  // namespace sttsca
