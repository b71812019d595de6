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

// Process-variation sampling, per-bit latency distributions and
// extreme-value extrapolation of the worst-case latency.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "sttsca/device.hpp"

namespace sttsca {

enum class PvDistribution { Normal, LogNormal };

struct PvModel {
  double sigma_delta_rel = 0.05;
  double sigma_r_rel = 0.02;
  double sigma_tmr_rel = 0.06;
  PvDistribution distribution = PvDistribution::Normal;

  bool operator==(const PvModel&) const = default;
};

/// Sigmas must lie in [0, 0.5).
void validate(const PvModel& model);

/// Realized per-bit parameters. Bit i depends only on (nominal, model,
/// seed, i).
struct PvSample {
  DeviceParams nominal;
  PvModel model;
  std::uint64_t seed = 0;
  Eigen::VectorXd delta_multiplier;
  Eigen::VectorXd r_low;
  Eigen::VectorXd tmr;

  std::size_t size() const { return static_cast<std::size_t>(delta_multiplier.size()); }
  DeviceParams device(std::size_t bit) const;
  std::vector<DeviceParams> devices() const;
};

PvSample sample_devices(const DeviceParams& nominal, const PvModel& model, std::size_t count,
                        std::uint64_t seed);

/// n copies of the nominal device.
std::vector<DeviceParams> nominal_devices(const DeviceParams& nominal, std::size_t count);

enum class LatencyKind { Read, Write };

/// Sense-margin read model: tau_read0 * (tmr_nominal / tmr_bit)^exponent.
struct ReadLatencyModel {
  double tau_read0 = 1.0e-9;
  double exponent = 3.0;

  bool operator==(const ReadLatencyModel&) const = default;
};

struct Histogram {
  std::vector<double> edges;         // bins + 1 ascending edges
  std::vector<std::size_t> counts;   // bins
};

struct LatencySummary {
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
  Histogram histogram;
};

/// Per-bit latencies of a sample. Write latencies use the slow direction at
/// the nominal supply voltage.
Eigen::VectorXd latency_values(const PvSample& sample, double temperature, LatencyKind kind,
                               const ReadLatencyModel& read_model = {});

LatencySummary summarize(const Eigen::VectorXd& values, std::size_t bins = 50);

LatencySummary latency_distribution(const PvSample& sample, double temperature, LatencyKind kind,
                                    const ReadLatencyModel& read_model = {}, std::size_t bins = 50);

enum class TailMethod { GumbelFit, GaussianOrderStatistic };

struct TailEstimate {
  std::uint64_t population_size = 0;
  double estimated_max = 0.0;
  double mean = 0.0;
  double ratio_max_to_mean = 1.0;
  TailMethod method = TailMethod::GumbelFit;

  double gaussian_max = 0.0;  // mean + sd * sqrt(2 ln N)
  double gumbel_location = 0.0;
  double gumbel_scale = 0.0;
  double sample_max = 0.0;
  std::size_t block_size = 0;
  bool degenerate = false;
};

inline constexpr std::size_t kEvtMinSamples = 1000;
inline constexpr std::size_t kEvtBlocks = 50;

/// Gumbel fit (maximum likelihood) to block maxima with block size
/// ceil(n / 50), evaluated as the expected maximum over target_population
/// draws. The estimate never falls below the observed sample maximum.
TailEstimate evt_extrapolate(const Eigen::VectorXd& sample_latencies, std::uint64_t target_population);

/// 8 MB of cells.
inline constexpr std::uint64_t kEightMegabyteBits = 8ULL * 1024 * 1024 * 8;

}  // namespace sttsca
