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

// Adversary engine: SPA level quantization, DPA averaging, Hamming-weight
// inference and the residual candidate-space metric.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sttsca/combinatorics.hpp"
#include "sttsca/device.hpp"
#include "sttsca/encoding.hpp"
#include "sttsca/trace.hpp"
#include "sttsca/variation.hpp"

namespace sttsca {

struct TimeWindow {
  double start = 0.0;
  double end = 0.0;
};

/// What the attacker knows: the number of cells written per transaction,
/// the driver, the nominal device and the environment it measures under.
/// Level tables and windows are derived from those, never learned.
struct AttackConfig {
  std::size_t word_width = 0;  // cells on the bus, including encoding overhead
  DriverMode driver;
  DeviceParams nominal;
  Environment env;
  TimeWindow pre_switch;
  TimeWindow post_switch;
  double level_p = 0.0;   // per-cell write current in P
  double level_ap = 0.0;  // per-cell write current in AP

  /// (n - m) * I_P + m * I_AP.
  double expected_level(int hamming_weight) const;
  double gap() const { return level_p - level_ap; }
};

/// Pre-switch window spans [5%, 80%] of the fastest nominal switch time;
/// post-switch spans [120% of the slowest, pulse end].
AttackConfig make_attack_config(std::size_t word_width, const DriverMode& driver, const DeviceParams& nominal,
                                const Environment& env);

struct AttackInference {
  std::optional<int> hw_old;
  std::optional<int> hw_new;
  BigCount residual_candidates = 1;
  double effort_bits = 0.0;
  bool low_confidence = false;  // a level sat beyond half a gap from every table entry
  double level_old = 0.0;
  double level_new = 0.0;
};

AttackInference spa_infer(const CurrentTrace& trace, const AttackConfig& config);

/// Point-wise mean of repeated traces of the same transaction, then SPA.
AttackInference dpa_infer(std::span<const CurrentTrace> traces, const AttackConfig& config);

CurrentTrace average_traces(std::span<const CurrentTrace> traces);

struct CandidateSpace {
  BigCount count;
  double effort_bits;
};

/// Number of (old, new) data-word pairs of width data_width whose encoded
/// transaction yields the inferred encoded weights. An unknown weight, or a
/// weight the scheme cannot produce, leaves that side at 2^data_width.
CandidateSpace candidate_space(const AttackInference& inference, int data_width, const EncodingScheme& scheme);

struct CampaignOptions {
  std::size_t trials = 1000;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  std::size_t traces_per_trial = 1;  // 1 = SPA, > 1 = DPA
  std::size_t threads = 1;
  std::optional<PvModel> victim_pv;  // process variation of the attacked cells
  SynthOptions synth;
};

struct TrialRecord {
  Word old_data;
  Word new_data;
  int hw_old_true = 0;  // encoded
  int hw_new_true = 0;
  std::optional<int> hw_old_est;
  std::optional<int> hw_new_est;
  bool old_correct = false;
  bool new_correct = false;
  bool low_confidence = false;
  double effort_bits = 0.0;
};

struct CampaignReport {
  std::size_t trials = 0;
  double accuracy_old = 0.0;
  double accuracy_new = 0.0;
  double mean_effort_bits = 0.0;
  std::uint64_t seed = 0;
  std::vector<TrialRecord> records;
};

/// Uniform random (old, new) data pairs, encoded with the scheme and attacked.
/// An unknown weight is scored by a uniform guess over [0, cells]. Results
/// depend only on (config, scheme, options minus threads).
CampaignReport attack_campaign(const AttackConfig& config, const EncodingScheme& scheme,
                               const CampaignOptions& options);

/// Number of samples before the earliest switch of a transaction, i.e. the
/// clean pre-switch attack window actually available in the trace.
std::size_t clean_pre_switch_samples(const WriteTransaction& txn, const SynthOptions& options = {});

}  // namespace sttsca
