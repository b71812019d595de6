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
#include <string>
#include <string_view>

#include "sttsca/word.hpp"

namespace sttsca {

enum class SchemeKind { None, Parity1, Random };

/// Leakage-obfuscating word encodings: identity, one even-parity bit, or r
/// appended seeded-uniform bits (1 <= r <= 8).
struct EncodingScheme {
  SchemeKind kind = SchemeKind::None;
  int random_bits = 0;

  static EncodingScheme none() { return {}; }
  static EncodingScheme parity1() { return {SchemeKind::Parity1, 0}; }
  static EncodingScheme random(int r);

  int overhead() const;
  /// "none", "parity1" or "random:r".
  std::string name() const;
  /// Accepts the canonical names plus "randomR" and "random(R)".
  static EncodingScheme parse(std::string_view text);

  bool operator==(const EncodingScheme&) const = default;
};

Word encode(const Word& word, const EncodingScheme& scheme, std::uint64_t seed);

/// Strips the scheme's overhead bits.
Word decode(const Word& encoded, const EncodingScheme& scheme);

}  // namespace sttsca
