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

#include "sttsca/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "sttsca/errors.hpp"

namespace sttsca {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ParseError("not a number: '" + std::string(text) + "'");
  return v;
}

std::string content_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static constexpr char digits[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xf];
    h >>= 4;
  }
  return std::string(buf, 16);
}

std::vector<std::vector<std::string>> read_csv_rows(std::istream& is, std::string_view expected_header) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header) throw ParseError("unexpected CSV header '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    rows.push_back(std::move(fields));
  }
  return rows;
}

void write_trace_csv(std::ostream& os, const CurrentTrace& trace) {
  os << "time_s,current_A\n";
  for (std::size_t i = 0; i < trace.size(); ++i)
    os << format_double(trace.time(i)) << ',' << format_double(trace.samples[static_cast<Eigen::Index>(i)]) << '\n';
}

CurrentTrace read_trace_csv(std::istream& is, std::optional<double> sample_rate) {
  const auto rows = read_csv_rows(is, "time_s,current_A");
  if (rows.empty()) throw ParseError("trace CSV has no samples");
  CurrentTrace trace;
  trace.samples.resize(static_cast<Eigen::Index>(rows.size()));
  std::vector<double> times(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw ParseError("trace CSV row " + std::to_string(i + 2) + " needs 2 fields");
    times[i] = parse_double(rows[i][0]);
    trace.samples[static_cast<Eigen::Index>(i)] = parse_double(rows[i][1]);
  }
  trace.t0 = times.front();
  if (sample_rate) {
    trace.sample_rate = *sample_rate;
  } else if (rows.size() > 1) {
    trace.sample_rate = static_cast<double>(rows.size() - 1) / (times.back() - times.front());
  } else {
    throw ParseError("single-sample trace needs an explicit sample rate");
  }
  return trace;
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "bin_low,bin_high,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    os << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ',' << h.counts[b] << '\n';
}

Histogram read_histogram_csv(std::istream& is) {
  const auto rows = read_csv_rows(is, "bin_low,bin_high,count");
  Histogram h;
  for (const auto& r : rows) {
    if (r.size() != 3) throw ParseError("histogram row needs 3 fields");
    if (h.edges.empty()) h.edges.push_back(parse_double(r[0]));
    h.edges.push_back(parse_double(r[1]));
    h.counts.push_back(static_cast<std::size_t>(parse_double(r[2])));
  }
  return h;
}

void write_defense_matrix_csv(std::ostream& os, const std::vector<DefenseRow>& rows) {
  os << kDefenseMatrixHeader << '\n';
  for (const auto& r : rows) {
    os << r.width << ',' << r.scheme.name() << ',' << driver_name(r.driver) << ',' << r.states << ','
       << format_double(r.reduction_pct) << ',' << format_double(r.unique_decodable_fraction) << ','
       << format_double(r.mean_posterior_entropy_bits) << ',' << format_double(r.mean_effort_bits) << '\n';
  }
}

std::vector<DefenseRow> read_defense_matrix_csv(std::istream& is) {
  std::vector<DefenseRow> out;
  for (const auto& r : read_csv_rows(is, kDefenseMatrixHeader)) {
    if (r.size() != 8) throw ParseError("defense matrix row needs 8 fields");
    out.push_back({static_cast<int>(parse_double(r[0])), EncodingScheme::parse(r[1]), parse_driver(r[2]),
                   static_cast<int>(parse_double(r[3])), parse_double(r[4]), parse_double(r[5]), parse_double(r[6]),
                   parse_double(r[7])});
  }
  return out;
}

nlohmann::json campaign_json(const CampaignReport& report, std::string_view config_hash) {
  return {{"trials", report.trials},
          {"accuracy_old", report.accuracy_old},
          {"accuracy_new", report.accuracy_new},
          {"mean_effort_bits", report.mean_effort_bits},
          {"config_hash", std::string(config_hash)},
          {"seed", report.seed}};
}

nlohmann::json tail_json(const TailEstimate& est) {
  return {{"population_size", est.population_size},
          {"estimated_max", est.estimated_max},
          {"mean", est.mean},
          {"ratio_max_to_mean", est.ratio_max_to_mean},
          {"method", est.method == TailMethod::GumbelFit ? "gumbel-fit" : "gaussian-order-statistic"},
          {"gaussian_max", est.gaussian_max},
          {"gumbel_location", est.gumbel_location},
          {"gumbel_scale", est.gumbel_scale},
          {"sample_max", est.sample_max},
          {"block_size", est.block_size},
          {"degenerate", est.degenerate}};
}

nlohmann::json metadata_json(std::string_view config_hash, std::uint64_t seed, const nlohmann::json& extra) {
  nlohmann::json j = {{"config_hash", std::string(config_hash)}, {"seed", seed}, {"artifact_version", kArtifactVersion}};
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

}  // namespace sttsca
