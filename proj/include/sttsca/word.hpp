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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sttsca/rng.hpp"

namespace sttsca {

inline constexpr std::size_t kMaxWordWidth = 512;

/// A memory word as an ordered bit sequence. Textual form is the bits in
/// index order, so "0111" has bit 0 = '0'.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::uint8_t> bits);

  /// All-zero word.
  static Word zeros(std::size_t width);
  static Word from_binary(std::string_view text);
  /// Hex digits expanded MSB-first, keeping the low `width` bits; excess
  /// high bits must be zero.
  static Word from_hex(std::string_view text, std::size_t width);
  /// Low `width` bits of value, most significant first.
  static Word from_uint(std::uint64_t value, std::size_t width);
  static Word random(std::size_t width, Rng& rng);

  std::size_t width() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  int hamming_weight() const;
  std::string to_string() const;

  const std::vector<std::uint8_t>& bits() const { return bits_; }
  Word appended(const Word& tail) const;
  Word truncated(std::size_t width) const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace sttsca
