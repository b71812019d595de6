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

// Run configuration: INI-style sections, strict keys, every default
// documented in one place.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "sttsca/device.hpp"
#include "sttsca/encoding.hpp"
#include "sttsca/trace.hpp"
#include "sttsca/variation.hpp"

namespace sttsca {

class ConfigFileMissing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  DeviceParams device = DeviceParams::defaults();
  RetentionFit retention;
  PvModel pv;
  ReadLatencyModel read;
  double temperature = kReferenceTemperature;
  double magnetic_tamper_factor = 1.0;
  double wordline_pulse = 0.0;  // 0 selects the design pulse
  DriverMode driver;
  EncodingScheme scheme;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  double sample_rate = 100e9;
  double noise_rate = 1e9;
  double noise_sigma = -1.0;  // < 0 selects 1% of the full-scale write current

  /// Environment with the design pulse resolved.
  Environment environment() const;
  /// Noise sigma resolved against a word width.
  double resolved_noise(std::size_t width) const;
  SynthOptions synth_options() const { return {sample_rate, 0.0, noise_rate}; }
};

/// Re-checks every module invariant; throws ConfigError.
void validate(const RunConfig& config);

/// Throws ParseError (malformed text, unknown keys, non-numeric values) or
/// ConfigError (invariant violations).
RunConfig parse_config_text(const std::string& text);
/// As parse_config_text; throws ConfigFileMissing when the file is absent.
RunConfig parse_config(const std::string& path);

/// The full effective configuration, defaults included, in the same format
/// parse_config_text accepts.
std::string effective_config_text(const RunConfig& config);
/// Hash of effective_config_text, ignoring output_dir.
std::string config_hash(const RunConfig& config);

}  // namespace sttsca
