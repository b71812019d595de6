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

#include "sttsca/combinatorics.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sttsca {

const std::vector<BigCount>& binomial_row(int n) {
  if (n < 0) throw std::invalid_argument("binomial_row: n must be >= 0");
  static std::mutex mutex;
  static std::map<int, std::vector<BigCount>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<BigCount> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;
  for (int k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
  return cache.emplace(n, std::move(row)).first->second;
}

BigCount binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return binomial_row(n)[static_cast<std::size_t>(k)];
}

double log2_big(const BigCount& x) {
  if (x <= 0) throw std::domain_error("log2_big: argument must be positive");
  const std::size_t msb = boost::multiprecision::msb(x);
  if (msb < 53) return std::log2(x.convert_to<double>());
  // Keep the top 53 bits as the mantissa.
  const std::size_t shift = msb - 52;
  const BigCount top = x >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

double binomial_half_pmf(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(log_c - n * std::log(2.0));
}

int popcount(std::uint64_t x) { return std::popcount(x); }

}  // namespace sttsca
