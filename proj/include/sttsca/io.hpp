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

// File formats: trace / histogram / defense-matrix CSV, campaign and tail
// JSON records, and the metadata sidecar every output carries.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sttsca/attack.hpp"
#include "sttsca/defense.hpp"
#include "sttsca/trace.hpp"
#include "sttsca/variation.hpp"

namespace sttsca {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
/// Whole-string parse; throws ParseError.
double parse_double(std::string_view text);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string content_hash(std::string_view text);

// Trace CSV: header "time_s,current_A", one row per sample.
void write_trace_csv(std::ostream& os, const CurrentTrace& trace);
/// The sample rate is recovered from the time column unless given.
CurrentTrace read_trace_csv(std::istream& is, std::optional<double> sample_rate = std::nullopt);

// Histogram CSV: "bin_low,bin_high,count".
void write_histogram_csv(std::ostream& os, const Histogram& histogram);
Histogram read_histogram_csv(std::istream& is);

// Defense matrix CSV.
inline constexpr const char* kDefenseMatrixHeader =
    "width,scheme,driver,states,reduction_pct,unique_decodable_fraction,mean_posterior_entropy_bits,mean_effort_bits";
void write_defense_matrix_csv(std::ostream& os, const std::vector<DefenseRow>& rows);
std::vector<DefenseRow> read_defense_matrix_csv(std::istream& is);

/// {trials, accuracy_old, accuracy_new, mean_effort_bits, config_hash, seed}
nlohmann::json campaign_json(const CampaignReport& report, std::string_view config_hash);
nlohmann::json tail_json(const TailEstimate& est);

/// {config_hash, seed, artifact_version} plus any extra fields.
nlohmann::json metadata_json(std::string_view config_hash, std::uint64_t seed,
                             const nlohmann::json& extra = nlohmann::json::object());

/// Splits a CSV file into rows of fields; checks the header matches.
std::vector<std::vector<std::string>> read_csv_rows(std::istream& is, std::string_view expected_header);

}  // namespace sttsca
