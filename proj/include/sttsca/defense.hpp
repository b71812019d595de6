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

// Countermeasure analysis: leakage-state counting for parity and random-bit
// encodings, retention scaling of semi-non-volatile cells and the
// scheme x width x driver comparison matrix.

#include <optional>
#include <vector>

#include "sttsca/combinatorics.hpp"
#include "sttsca/device.hpp"
#include "sttsca/encoding.hpp"
#include "sttsca/trace.hpp"

namespace sttsca {

/// Joint counts of (data word, overhead pattern) pairs by data weight w and
/// encoded weight e. Every scheme satisfies 0 <= e - w <= overhead, so the
/// table is stored as a band: band[w][e - w].
struct WeightTable {
  int data_width = 0;
  int overhead = 0;
  std::vector<std::vector<BigCount>> band;

  int encoded_width() const { return data_width + overhead; }
  /// Zero outside the band.
  BigCount count(int w, int e) const;
  BigCount total() const;

  bool operator==(const WeightTable&) const = default;
};

inline constexpr int kEnumerationMaxWidth = 20;

/// Walks every data word and every overhead pattern. data_width <= 20.
WeightTable weight_table_enumerated(int data_width, const EncodingScheme& scheme);
/// Binomial products; any width.
WeightTable weight_table_closed_form(int data_width, const EncodingScheme& scheme);
/// Enumeration up to kEnumerationMaxWidth, closed form above. Cached.
const WeightTable& weight_table(int data_width, const EncodingScheme& scheme);

/// Data words that can encode to the given weight.
BigCount consistent_data_words(int data_width, const EncodingScheme& scheme, int encoded_weight);

struct StateReport {
  int data_width = 0;
  EncodingScheme scheme;
  int states_uncoded = 0;
  int states_encoded = 0;
  double reduction_pct = 0.0;
  double unique_decodable_fraction = 0.0;
  double mean_posterior_entropy_bits = 0.0;
};

/// A state is a distinct final current level, i.e. a distinct encoded
/// Hamming weight. For random schemes reduction_pct comes out negative (the
/// extra bits add levels); use the decodability and entropy metrics instead.
StateReport enumerate_states(int data_width, const EncodingScheme& scheme);
StateReport state_report(const WeightTable& table, const EncodingScheme& scheme);

/// Mean over uniform data of log2(consistent old words * consistent new words)
/// for a noiseless constant-voltage observer.
double mean_effort_bits(int data_width, const EncodingScheme& scheme, DriverKind driver);

struct SnvmRow {
  double volume_factor;
  double delta;
  double retention_s;
  bool retention_saturated;
  double write_latency_s;  // slow direction at the nominal supply
  double write_current_a;  // P-state write current at the scaled drive
  double level_gap_a;
};

/// Thickness scaled per factor. The write drive is scaled with the design
/// delta (at the reference temperature) relative to delta0, since write
/// current tracks the thermal barrier.
std::vector<SnvmRow> snvm_profile(const DeviceParams& params, const std::vector<double>& volume_factors,
                                  double temperature = kReferenceTemperature, const RetentionFit& fit = {});

struct DefenseRow {
  int width;
  EncodingScheme scheme;
  DriverKind driver;
  int states;
  double reduction_pct;
  double unique_decodable_fraction;
  double mean_posterior_entropy_bits;
  double mean_effort_bits;
};

std::vector<DefenseRow> defense_matrix(const std::vector<int>& widths, const std::vector<EncodingScheme>& schemes,
                                       const std::vector<DriverKind>& drivers);

}  // namespace sttsca
