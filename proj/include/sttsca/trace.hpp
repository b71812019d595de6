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

#pragma once

// Supply-current trace synthesis for word-parallel STT-MRAM reads and
// writes under constant-voltage or constant-current drivers.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "sttsca/device.hpp"
#include "sttsca/word.hpp"

namespace sttsca {

enum class DriverKind { ConstantVoltage, ConstantCurrent };

struct DriverMode {
  DriverKind kind = DriverKind::ConstantVoltage;
  double i_write = 100e-6;     // A, mirrored per-cell current (constant-current only)
  double tau_cc_slow = 1.0e-9; // s, slow-direction latency at delta0 (constant-current only)

  static DriverMode constant_voltage() { return {}; }
  static DriverMode constant_current(double i_write = 100e-6, double tau_cc_slow = 1.0e-9) {
    return {DriverKind::ConstantCurrent, i_write, tau_cc_slow};
  }
  bool operator==(const DriverMode&) const = default;
};

const char* driver_name(DriverKind kind);
DriverKind parse_driver(std::string_view text);
void validate(const DriverMode& driver);

struct Environment {
  double temperature = kReferenceTemperature;  // K
  double magnetic_tamper_factor = 1.0;         // >= 1, multiplies switch times
  double wordline_pulse = 0.0;                 // s, must be set (see design_pulse)

  bool operator==(const Environment&) const = default;
};

void validate(const Environment& env);

/// Twice the slowest nominal switch time at the reference temperature,
/// without tampering.
double design_pulse(const DeviceParams& nominal, const DriverMode& driver);

/// Environment with the design pulse filled in.
Environment make_environment(const DeviceParams& nominal, const DriverMode& driver,
                             double temperature = kReferenceTemperature, double tamper = 1.0);

struct CurrentTrace {
  double sample_rate = 0.0;  // Hz
  double t0 = 0.0;           // s, wordline assertion
  Eigen::VectorXd samples;   // A, magnitudes

  std::size_t size() const { return static_cast<std::size_t>(samples.size()); }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) / sample_rate; }
  double end_time() const { return time(size() - 1); }
};

/// Measurement noise is drawn independently at noise_rate and held between
/// draws, so every sample has standard deviation sigma and samples closer
/// than 1 / noise_rate share one draw. noise_rate >= sample_rate gives
/// independent noise per sample.
struct SynthOptions {
  double sample_rate = 100e9;  // Hz
  double smoothing_tau = 0.0;  // s, first-order settling after a switch; 0 = ideal step
  double noise_rate = 1e9;     // Hz, acquisition rate of the measuring instrument
};

struct WriteTransaction {
  Word old_word;
  Word new_word;
  DriverMode driver;
  std::vector<DeviceParams> devices;  // one per bit
  Environment env;
};

/// Time from wordline assertion until the cell finishes switching, or
/// nullopt when old_bit == new_bit. Throws WriteFailure (tagged with
/// bit_index) when the switch would not complete within the pulse.
std::optional<double> per_bit_switch_time(bool old_bit, bool new_bit, const DeviceParams& device,
                                          const Environment& env, const DriverMode& driver,
                                          std::size_t bit_index = 0);

std::vector<std::optional<double>> switch_times(const WriteTransaction& txn);

CurrentTrace synthesize_write_trace(const WriteTransaction& txn, double noise_sigma, std::uint64_t seed,
                                    const SynthOptions& options = {});

CurrentTrace synthesize_read_trace(const Word& word, const std::vector<DeviceParams>& devices,
                                   const Environment& env, double noise_sigma, std::uint64_t seed,
                                   const SynthOptions& options = {});

/// Mean of the samples whose time lies in [t_start, t_end].
double sample_window(const CurrentTrace& trace, double t_start, double t_end);

/// Number of samples in [t_start, t_end].
std::size_t window_sample_count(const CurrentTrace& trace, double t_start, double t_end);

}  // namespace sttsca
