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
#include <stdexcept>
#include <string>

namespace sttsca {

/// Precondition or physical-domain violation (non-positive temperature,
/// negative geometry, mismatched word widths, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configuration value violates a model invariant.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structured-text input could not be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cell did not finish switching before the wordline pulse ended.
class WriteFailure : public std::runtime_error {
 public:
  WriteFailure(std::size_t bit, double switch_time, double pulse)
      : std::runtime_error("write failure at bit " + std::to_string(bit) +
                           ": switch time " + std::to_string(switch_time * 1e9) +
                           " ns exceeds wordline pulse " + std::to_string(pulse * 1e9) +
                           " ns"),
        bit_(bit),
        switch_time_(switch_time),
        pulse_(pulse) {}

  std::size_t bit() const { return bit_; }
  double switch_time() const { return switch_time_; }
  double pulse() const { return pulse_; }

 private:
  std::size_t bit_;
  double switch_time_;
  double pulse_;
};

}  // namespace sttsca
