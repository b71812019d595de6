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

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sttsca {

/// Exact candidate counts; 2^(2*512) does not fit any builtin type.
using BigCount = boost::multiprecision::cpp_int;

/// C(n, k) exactly; zero outside 0 <= k <= n.
BigCount binomial(int n, int k);

/// Row n of Pascal's triangle, cached per n. Thread-safe.
const std::vector<BigCount>& binomial_row(int n);

/// log2 of a positive big integer, accurate to double precision.
double log2_big(const BigCount& x);

/// P(Binomial(n, 1/2) = k) in double precision.
double binomial_half_pmf(int n, int k);

int popcount(std::uint64_t x);

}  // namespace sttsca
