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

#include "sttsca/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sttsca/errors.hpp"
#include "sttsca/io.hpp"

namespace sttsca {

Environment RunConfig::environment() const {
  Environment env{temperature, magnetic_tamper_factor, wordline_pulse};
  if (env.wordline_pulse == 0.0) env.wordline_pulse = design_pulse(device, driver);
  return env;
}

double RunConfig::resolved_noise(std::size_t width) const {
  if (noise_sigma >= 0.0) return noise_sigma;
  const double per_cell = driver.kind == DriverKind::ConstantCurrent
                              ? driver.i_write
                              : cell_current(BitState::P, CellMode::Write, device);
  return 0.01 * per_cell * static_cast<double>(width);
}

void validate(const RunConfig& c) {
  validate(c.device);
  validate(c.pv);
  validate(c.driver);
  if (!(c.retention.c > 0.0) || !(c.retention.k > 0.0)) throw ConfigError("retention.c and retention.k must be > 0");
  if (!(c.read.tau_read0 > 0.0)) throw ConfigError("read.tau_read0 must be > 0");
  if (!(c.read.exponent >= 0.0)) throw ConfigError("read.exponent must be >= 0");
  if (c.wordline_pulse < 0.0) throw ConfigError("env.wordline_pulse must be >= 0 (0 = design pulse)");
  validate(c.environment());
  if (!(c.sample_rate > 0.0)) throw ConfigError("run.sample_rate must be > 0");
  if (!(c.noise_rate > 0.0)) throw ConfigError("run.noise_rate must be > 0");
  if (c.output_dir.empty()) throw ConfigError("run.output_dir must not be empty");
}

namespace {

using Setter = std::function<void(RunConfig&, const std::string&)>;

Setter number(double RunConfig::*field) {
  return [field](RunConfig& c, const std::string& v) { c.*field = parse_double(v); };
}

template <typename Sub>
Setter number(Sub RunConfig::*sub, double Sub::*field) {
  return [sub, field](RunConfig& c, const std::string& v) { (c.*sub).*field = parse_double(v); };
}

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s = {
      {"device",
       {{"k_u", number(&RunConfig::device, &DeviceParams::k_u)},
        {"area", number(&RunConfig::device, &DeviceParams::area)},
        {"thickness", number(&RunConfig::device, &DeviceParams::thickness)},
        {"tmr", number(&RunConfig::device, &DeviceParams::tmr)},
        {"r_low", number(&RunConfig::device, &DeviceParams::r_low)},
        {"v_write_eff", number(&RunConfig::device, &DeviceParams::v_write_eff)},
        {"v_supply", number(&RunConfig::device, &DeviceParams::v_supply)},
        {"read_current_fraction", number(&RunConfig::device, &DeviceParams::read_current_fraction)},
        {"tau0", number(&RunConfig::device, &DeviceParams::tau0)},
        {"delta0", number(&RunConfig::device, &DeviceParams::delta0)},
        {"dir_asymmetry", number(&RunConfig::device, &DeviceParams::dir_asymmetry)}}},
      {"retention",
       {{"c", number(&RunConfig::retention, &RetentionFit::c)}, {"k", number(&RunConfig::retention, &RetentionFit::k)}}},
      {"pv",
       {{"sigma_delta_rel", number(&RunConfig::pv, &PvModel::sigma_delta_rel)},
        {"sigma_r_rel", number(&RunConfig::pv, &PvModel::sigma_r_rel)},
        {"sigma_tmr_rel", number(&RunConfig::pv, &PvModel::sigma_tmr_rel)},
        {"distribution",
         [](RunConfig& c, const std::string& v) {
           if (v == "normal")
             c.pv.distribution = PvDistribution::Normal;
           else if (v == "lognormal")
             c.pv.distribution = PvDistribution::LogNormal;
           else
             throw ConfigError("pv.distribution must be normal or lognormal");
         }}}},
      {"read",
       {{"tau_read0", number(&RunConfig::read, &ReadLatencyModel::tau_read0)},
        {"exponent", number(&RunConfig::read, &ReadLatencyModel::exponent)}}},
      {"env",
       {{"temperature", number(&RunConfig::temperature)},
        {"magnetic_tamper_factor", number(&RunConfig::magnetic_tamper_factor)},
        {"wordline_pulse", number(&RunConfig::wordline_pulse)}}},
      {"driver",
       {{"mode", [](RunConfig& c, const std::string& v) { c.driver.kind = parse_driver(v); }},
        {"i_write", number(&RunConfig::driver, &DriverMode::i_write)},
        {"tau_cc_slow", number(&RunConfig::driver, &DriverMode::tau_cc_slow)}}},
      {"run",
       {{"scheme", [](RunConfig& c, const std::string& v) { c.scheme = EncodingScheme::parse(v); }},
        {"seed",
         [](RunConfig& c, const std::string& v) {
           std::uint64_t s = 0;
           const auto res = std::from_chars(v.data(), v.data() + v.size(), s);
           if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size())
             throw ParseError("run.seed must be a non-negative integer");
           c.seed = s;
         }},
        {"output_dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; }},
        {"sample_rate", number(&RunConfig::sample_rate)},
        {"noise_rate", number(&RunConfig::noise_rate)},
        {"noise_sigma", number(&RunConfig::noise_sigma)}}},
  };
  return s;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(std::string("config: ") + e.message() + " at line " + std::to_string(e.line()));
  }

  RunConfig cfg;
  const auto& s = schema();
  for (const auto& [section, body] : tree) {
    const auto sec = s.find(section);
    if (sec == s.end()) {
      if (body.empty()) throw ParseError("config: key '" + section + "' outside any section");
      throw ParseError("config: unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      const auto setter = sec->second.find(key);
      if (setter == sec->second.end()) throw ParseError("config: unknown key " + section + "." + key);
      try {
        setter->second(cfg, value.data());
      } catch (const ParseError& e) {
        throw ParseError(section + "." + key + ": " + e.what());
      }
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw ConfigFileMissing("config file not found: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigFileMissing("config file not readable: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string effective_config_text(const RunConfig& c) {
  std::ostringstream os;
  auto kv = [&](const char* k, double v) { os << k << " = " << format_double(v) << '\n'; };
  const DeviceParams& d = c.device;
  os << "[device]\n";
  kv("k_u", d.k_u);
  kv("area", d.area);
  kv("thickness", d.thickness);
  kv("tmr", d.tmr);
  kv("r_low", d.r_low);
  kv("v_write_eff", d.v_write_eff);
  kv("v_supply", d.v_supply);
  kv("read_current_fraction", d.read_current_fraction);
  kv("tau0", d.tau0);
  kv("delta0", d.delta0);
  kv("dir_asymmetry", d.dir_asymmetry);
  os << "\n[retention]\n";
  kv("c", c.retention.c);
  kv("k", c.retention.k);
  os << "\n[pv]\n";
  kv("sigma_delta_rel", c.pv.sigma_delta_rel);
  kv("sigma_r_rel", c.pv.sigma_r_rel);
  kv("sigma_tmr_rel", c.pv.sigma_tmr_rel);
  os << "distribution = " << (c.pv.distribution == PvDistribution::Normal ? "normal" : "lognormal") << '\n';
  os << "\n[read]\n";
  kv("tau_read0", c.read.tau_read0);
  kv("exponent", c.read.exponent);
  os << "\n[env]\n";
  kv("temperature", c.temperature);
  kv("magnetic_tamper_factor", c.magnetic_tamper_factor);
  kv("wordline_pulse", c.wordline_pulse);
  os << "\n[driver]\n";
  os << "mode = " << driver_name(c.driver.kind) << '\n';
  kv("i_write", c.driver.i_write);
  kv("tau_cc_slow", c.driver.tau_cc_slow);
  os << "\n[run]\n";
  os << "scheme = " << c.scheme.name() << '\n';
  os << "seed = " << c.seed << '\n';
  os << "output_dir = " << c.output_dir << '\n';
  kv("sample_rate", c.sample_rate);
  kv("noise_rate", c.noise_rate);
  kv("noise_sigma", c.noise_sigma);
  return os.str();
}

std::string config_hash(const RunConfig& c) {
  // Where outputs land does not change what they contain.
  RunConfig keyed = c;
  keyed.output_dir = "-";
  return content_hash(effective_config_text(keyed));
}

}  // namespace sttsca
