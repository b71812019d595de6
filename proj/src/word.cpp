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

#include "sttsca/word.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>

#include "sttsca/encoding.hpp"
#include "sttsca/errors.hpp"

namespace sttsca {

namespace {

void check_width(std::size_t width) {
  if (width < 1 || width > kMaxWordWidth)
    throw DomainError("word width must be in [1, " + std::to_string(kMaxWordWidth) + "], got " +
                      std::to_string(width));
}

}  // namespace

Word::Word(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  check_width(bits_.size());
  for (auto& b : bits_)
    if (b > 1) throw DomainError("word bits must be 0 or 1");
}

Word Word::zeros(std::size_t width) { return Word(std::vector<std::uint8_t>(width, 0)); }

Word Word::from_binary(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1')
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c != '_')
      throw DomainError("invalid binary digit '" + std::string(1, c) + "'");
  }
  return Word(std::move(bits));
}

Word Word::from_hex(std::string_view text, std::size_t width) {
  check_width(width);
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  std::vector<std::uint8_t> all;
  for (char c : text) {
    if (c == '_') continue;
    if (!std::isxdigit(static_cast<unsigned char>(c)))
      throw DomainError("invalid hex digit '" + std::string(1, c) + "'");
    const int v = std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : std::tolower(c) - 'a' + 10;
    for (int b = 3; b >= 0; --b) all.push_back(static_cast<std::uint8_t>((v >> b) & 1));
  }
  if (all.size() < width) all.insert(all.begin(), width - all.size(), 0);
  const std::size_t excess = all.size() - width;
  if (std::any_of(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(excess), [](auto b) { return b != 0; }))
    throw DomainError("hex value does not fit in " + std::to_string(width) + " bits");
  return Word(std::vector<std::uint8_t>(all.begin() + static_cast<std::ptrdiff_t>(excess), all.end()));
}

Word Word::from_uint(std::uint64_t value, std::size_t width) {
  check_width(width);
  std::vector<std::uint8_t> bits(width, 0);
  for (std::size_t i = 0; i < width && i < 64; ++i) bits[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1);
  return Word(std::move(bits));
}

Word Word::random(std::size_t width, Rng& rng) {
  check_width(width);
  std::vector<std::uint8_t> bits(width);
  std::uint64_t pool = 0;
  for (std::size_t i = 0; i < width; ++i) {
    if (i % 64 == 0) pool = rng();
    bits[i] = static_cast<std::uint8_t>(pool & 1);
    pool >>= 1;
  }
  return Word(std::move(bits));
}

int Word::hamming_weight() const { return std::accumulate(bits_.begin(), bits_.end(), 0); }

std::string Word::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
  return s;
}

Word Word::appended(const Word& tail) const {
  std::vector<std::uint8_t> bits = bits_;
  bits.insert(bits.end(), tail.bits_.begin(), tail.bits_.end());
  return Word(std::move(bits));
}

Word Word::truncated(std::size_t width) const {
  if (width > bits_.size()) throw DomainError("cannot truncate to a wider word");
  return Word(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(width)));
}

// Encodings

EncodingScheme EncodingScheme::random(int r) {
  if (r < 1 || r > 8) throw ConfigError("random scheme needs 1..8 bits, got " + std::to_string(r));
  return {SchemeKind::Random, r};
}

int EncodingScheme::overhead() const {
  switch (kind) {
    case SchemeKind::None: return 0;
    case SchemeKind::Parity1: return 1;
    case SchemeKind::Random: return random_bits;
  }
  return 0;
}

std::string EncodingScheme::name() const {
  switch (kind) {
    case SchemeKind::None: return "none";
    case SchemeKind::Parity1: return "parity1";
    case SchemeKind::Random: return "random:" + std::to_string(random_bits);
  }
  return "none";
}

EncodingScheme EncodingScheme::parse(std::string_view text) {
  if (text == "none") return none();
  if (text == "parity1" || text == "parity") return parity1();
  if (text.starts_with("random")) {
    std::string_view rest = text.substr(6);
    if (rest.starts_with(":")) rest.remove_prefix(1);
    if (rest.starts_with("(") && rest.ends_with(")")) rest = rest.substr(1, rest.size() - 2);
    if (rest.size() == 1 && std::isdigit(static_cast<unsigned char>(rest[0]))) return random(rest[0] - '0');
  }
  throw ConfigError("unknown encoding scheme '" + std::string(text) + "'");
}

Word encode(const Word& word, const EncodingScheme& scheme, std::uint64_t seed) {
  switch (scheme.kind) {
    case SchemeKind::None:
      return word;
    case SchemeKind::Parity1: {
      const auto parity = static_cast<std::uint8_t>(word.hamming_weight() & 1);
      return word.appended(Word(std::vector<std::uint8_t>{parity}));
    }
    case SchemeKind::Random: {
      Rng rng(derive_seed(seed, {stream::kEncode}));
      return word.appended(Word::random(static_cast<std::size_t>(scheme.random_bits), rng));
    }
  }
  return word;
}

Word decode(const Word& encoded, const EncodingScheme& scheme) {
  const auto overhead = static_cast<std::size_t>(scheme.overhead());
  if (encoded.width() <= overhead) throw DomainError("encoded word shorter than scheme overhead");
  return encoded.truncated(encoded.width() - overhead);
}

}  // namespace sttsca
