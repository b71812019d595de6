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

#include "sttsca/defense.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "sttsca/errors.hpp"

namespace sttsca {

BigCount WeightTable::count(int w, int e) const {
  const int k = e - w;
  if (w < 0 || w > data_width || k < 0 || k > overhead) return 0;
  return band[w][k];
}

BigCount WeightTable::total() const {
  BigCount t = 0;
  for (const auto& row : band)
    for (const auto& c : row) t += c;
  return t;
}

namespace {

void check_data_width(int n) {
  if (n < 1 || n > static_cast<int>(kMaxWordWidth))
    throw DomainError("data width must be in [1, 512], got " + std::to_string(n));
}

WeightTable empty_table(int n, const EncodingScheme& scheme) {
  WeightTable t;
  t.data_width = n;
  t.overhead = scheme.overhead();
  t.band.assign(static_cast<std::size_t>(n) + 1, std::vector<BigCount>(static_cast<std::size_t>(t.overhead) + 1, 0));
  return t;
}

}  // namespace

WeightTable weight_table_enumerated(int n, const EncodingScheme& scheme) {
  check_data_width(n);
  if (n > kEnumerationMaxWidth) throw DomainError("enumeration limited to width <= 20");
  WeightTable t = empty_table(n, scheme);
  const int r = scheme.overhead();

  // Every overhead pattern a random scheme can append, by weight.
  std::vector<std::uint64_t> pattern_weights(static_cast<std::size_t>(r) + 1, 0);
  if (scheme.kind == SchemeKind::Random)
    for (std::uint64_t p = 0; p < (1ULL << r); ++p) pattern_weights[static_cast<std::size_t>(popcount(p))]++;

  std::vector<std::vector<std::uint64_t>> tally(static_cast<std::size_t>(n) + 1,
                                                std::vector<std::uint64_t>(static_cast<std::size_t>(r) + 1, 0));
  for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
    const int w = popcount(x);
    switch (scheme.kind) {
      case SchemeKind::None:
        tally[w][0]++;
        break;
      case SchemeKind::Parity1:
        tally[w][w & 1]++;  // even parity bit equals the data parity
        break;
      case SchemeKind::Random:
        for (int k = 0; k <= r; ++k) tally[w][k] += pattern_weights[k];
        break;
    }
  }
  for (int w = 0; w <= n; ++w)
    for (int k = 0; k <= r; ++k) t.band[w][k] = tally[w][k];
  return t;
}

WeightTable weight_table_closed_form(int n, const EncodingScheme& scheme) {
  check_data_width(n);
  WeightTable t = empty_table(n, scheme);
  for (int w = 0; w <= n; ++w) {
    switch (scheme.kind) {
      case SchemeKind::None:
        t.band[w][0] = binomial(n, w);
        break;
      case SchemeKind::Parity1:
        t.band[w][w % 2] = binomial(n, w);
        break;
      case SchemeKind::Random:
        for (int k = 0; k <= scheme.random_bits; ++k) t.band[w][k] = binomial(n, w) * binomial(scheme.random_bits, k);
        break;
    }
  }
  return t;
}

const WeightTable& weight_table(int n, const EncodingScheme& scheme) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, WeightTable> cache;
  const auto key = std::make_tuple(n, static_cast<int>(scheme.kind), scheme.random_bits);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  WeightTable t = n <= kEnumerationMaxWidth ? weight_table_enumerated(n, scheme) : weight_table_closed_form(n, scheme);
  std::lock_guard lock(mutex);
  return cache.try_emplace(key, std::move(t)).first->second;
}

BigCount consistent_data_words(int n, const EncodingScheme& scheme, int e) {
  const WeightTable& t = weight_table(n, scheme);
  BigCount c = 0;
  for (int w = std::max(0, e - t.overhead); w <= std::min(n, e); ++w)
    if (t.count(w, e) != 0) c += binomial(n, w);
  return c;
}

StateReport state_report(const WeightTable& t, const EncodingScheme& scheme) {
  const int n = t.data_width;
  StateReport rep;
  rep.data_width = n;
  rep.scheme = scheme;
  rep.states_uncoded = n + 1;

  const double total = t.total().convert_to<double>();
  std::vector<bool> decodable(static_cast<std::size_t>(n) + 1, false);
  double entropy = 0.0;
  for (int e = 0; e <= t.encoded_width(); ++e) {
    const int lo = std::max(0, e - t.overhead);
    const int hi = std::min(n, e);
    double column = 0.0;
    int producers = 0;
    int producer = -1;
    for (int w = lo; w <= hi; ++w) {
      const BigCount& c = t.band[w][e - w];
      if (c == 0) continue;
      column += c.convert_to<double>();
      ++producers;
      producer = w;
    }
    if (producers == 0) continue;
    ++rep.states_encoded;
    if (producers == 1) decodable[static_cast<std::size_t>(producer)] = true;
    double h = 0.0;
    for (int w = lo; w <= hi; ++w) {
      const double c = t.band[w][e - w].convert_to<double>();
      if (c > 0.0) h -= (c / column) * std::log2(c / column);
    }
    entropy += (column / total) * h;
  }
  rep.reduction_pct =
      100.0 * static_cast<double>(rep.states_uncoded - rep.states_encoded) / static_cast<double>(rep.states_uncoded);
  rep.unique_decodable_fraction =
      static_cast<double>(std::count(decodable.begin(), decodable.end(), true)) / static_cast<double>(n + 1);
  rep.mean_posterior_entropy_bits = entropy;
  return rep;
}

StateReport enumerate_states(int n, const EncodingScheme& scheme) {
  return state_report(weight_table(n, scheme), scheme);
}

double mean_effort_bits(int n, const EncodingScheme& scheme, DriverKind driver) {
  check_data_width(n);
  if (driver == DriverKind::ConstantCurrent) return 2.0 * n;
  const WeightTable& t = weight_table(n, scheme);
  const double total = t.total().convert_to<double>();
  double side = 0.0;
  for (int e = 0; e <= t.encoded_width(); ++e) {
    double column = 0.0;
    for (int w = std::max(0, e - t.overhead); w <= std::min(n, e); ++w) column += t.band[w][e - w].convert_to<double>();
    if (column == 0.0) continue;
    side += (column / total) * log2_big(consistent_data_words(n, scheme, e));
  }
  // Old and new words are independent and identically distributed.
  return 2.0 * side;
}

std::vector<SnvmRow> snvm_profile(const DeviceParams& params, const std::vector<double>& volume_factors,
                                  double temperature, const RetentionFit& fit) {
  std::vector<SnvmRow> rows;
  rows.reserve(volume_factors.size());
  for (double f : volume_factors) {
    DeviceParams p = scale_volume(params, f);
    p.v_write_eff = params.v_write_eff * thermal_stability(p, kReferenceTemperature) / params.delta0;
    const double delta = thermal_stability(p, temperature);
    const RetentionTime ret = retention_time(delta, fit);
    rows.push_back({f, delta, ret.seconds, ret.saturated, write_latency(delta, p.v_supply, Direction::PToAP, p),
                    cell_current(BitState::P, CellMode::Write, p), level_gap(p)});
  }
  return rows;
}

namespace {

double binomial_entropy_bits(int n) {
  double h = 0.0;
  for (int w = 0; w <= n; ++w) {
    const double p = binomial_half_pmf(n, w);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

std::vector<DefenseRow> defense_matrix(const std::vector<int>& widths, const std::vector<EncodingScheme>& schemes,
                                       const std::vector<DriverKind>& drivers) {
  if (widths.empty() || schemes.empty() || drivers.empty()) throw DomainError("defense_matrix: empty axis");
  std::vector<DefenseRow> rows;
  for (int n : widths) {
    for (const auto& scheme : schemes) {
      for (DriverKind driver : drivers) {
        DefenseRow row{n, scheme, driver, 0, 0.0, 0.0, 0.0, 0.0};
        if (driver == DriverKind::ConstantCurrent) {
          // One flat level whatever the data.
          row.states = 1;
          row.reduction_pct = 100.0 * n / (n + 1.0);
          row.unique_decodable_fraction = 0.0;
          row.mean_posterior_entropy_bits = binomial_entropy_bits(n);
        } else {
          const StateReport rep = enumerate_states(n, scheme);
          row.states = rep.states_encoded;
          row.reduction_pct = rep.reduction_pct;
          row.unique_decodable_fraction = rep.unique_decodable_fraction;
          row.mean_posterior_entropy_bits = rep.mean_posterior_entropy_bits;
        }
        row.mean_effort_bits = mean_effort_bits(n, scheme, driver);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace sttsca
