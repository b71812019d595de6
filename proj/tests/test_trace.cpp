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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "sttsca/errors.hpp"
#include "sttsca/trace.hpp"
#include "sttsca/variation.hpp"

namespace sttsca {
namespace {

const DeviceParams kNominal = DeviceParams::defaults();

WriteTransaction cv_txn(const Word& o, const Word& n, double temperature = 300.0, double tamper = 1.0) {
  const DriverMode drv = DriverMode::constant_voltage();
  return {o, n, drv, nominal_devices(kNominal, o.width()), make_environment(kNominal, drv, temperature, tamper)};
}

// Per-sample recomputation from first principles: each cell draws its old
// current until its switch instant, then its new current.
Eigen::VectorXd oracle_samples(const WriteTransaction& txn, double fs) {
  const auto n = static_cast<Eigen::Index>(std::floor(txn.env.wordline_pulse * fs + 1e-9)) + 1;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) / fs;
    for (std::size_t i = 0; i < txn.new_word.width(); ++i) {
      const auto& d = txn.devices[i];
      const double i_old = d.v_write_eff / (txn.old_word[i] ? d.r_high() : d.r_low);
      const double i_new = d.v_write_eff / (txn.new_word[i] ? d.r_high() : d.r_low);
      if (txn.old_word[i] == txn.new_word[i]) {
        out[j] += i_new;
        continue;
      }
      const double slow = d.tau0 * (thermal_stability(d, txn.env.temperature) / d.delta0) / d.v_supply;
      const double ts = (txn.new_word[i] ? slow : slow * d.dir_asymmetry) * txn.env.magnetic_tamper_factor;
      out[j] += t * fs >= ts * fs - 1e-9 ? i_new : i_old;
    }
  }
  return out;
}

TEST(WriteTrace, FullFlipLevels) {
  const auto txn = cv_txn(Word::from_binary("0000"), Word::from_binary("1111"));
  const CurrentTrace tr = synthesize_write_trace(txn, 0.0, 1);
  EXPECT_NEAR(sample_window(tr, 0.0, 0.5e-9), 600e-6, 1e-12);
  EXPECT_NEAR(sample_window(tr, 0.6e-9, txn.env.wordline_pulse), 300e-6, 1e-12);
  EXPECT_EQ(tr.size(), 119u);
  EXPECT_NEAR(tr.end_time(), 1.18e-9, 1e-18);
}

TEST(WriteTrace, MatchesPerSampleOracleExhaustively) {
  for (std::uint64_t o = 0; o < 16; ++o) {
    for (std::uint64_t n = 0; n < 16; ++n) {
      const auto txn = cv_txn(Word::from_uint(o, 4), Word::from_uint(n, 4));
      const CurrentTrace tr = synthesize_write_trace(txn, 0.0, 1);
      const Eigen::VectorXd expect = oracle_samples(txn, 100e9);
      ASSERT_EQ(tr.samples.size(), expect.size());
      EXPECT_LT((tr.samples - expect).cwiseAbs().maxCoeff(), 1e-15) << o << "->" << n;
    }
  }
}

TEST(WriteTrace, OracleUnderPvAndTemperature) {
  Rng rng(4);
  const PvSample pv = sample_devices(kNominal, PvModel{}, 16, 12);
  for (int k = 0; k < 20; ++k) {
    WriteTransaction txn{Word::random(16, rng), Word::random(16, rng), DriverMode::constant_voltage(),
                         pv.devices(), make_environment(kNominal, DriverMode::constant_voltage(), 330.0)};
    const CurrentTrace tr = synthesize_write_trace(txn, 0.0, 1);
    EXPECT_LT((tr.samples - oracle_samples(txn, 100e9)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(WriteTrace, UnchangedWordIsFlat) {
  for (const char* w : {"0000", "1111", "0110"}) {
    const auto txn = cv_txn(Word::from_binary(w), Word::from_binary(w));
    const CurrentTrace tr = synthesize_write_trace(txn, 0.0, 1);
    EXPECT_EQ(tr.samples.maxCoeff(), tr.samples.minCoeff());
  }
}

TEST(WriteTrace, PermutationInvariance) {
  Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    const Word o = Word::random(8, rng);
    const Word n = Word::random(8, rng);
    std::vector<std::size_t> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::uint8_t> po(8), pn(8);
    for (std::size_t i = 0; i < 8; ++i) {
      po[i] = o[perm[i]];
      pn[i] = n[perm[i]];
    }
    const auto a = synthesize_write_trace(cv_txn(o, n), 0.0, 1);
    const auto b = synthesize_write_trace(cv_txn(Word(po), Word(pn)), 0.0, 1);
    EXPECT_LT((a.samples - b.samples).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(WriteTrace, LevelGapConstantAcrossWeights) {
  const DriverMode drv = DriverMode::constant_voltage();
  const Environment env = make_environment(kNominal, drv);
  for (std::size_t width : {4u, 8u, 16u}) {
    double prev = 0.0;
    for (std::size_t w = 0; w <= width; ++w) {
      std::vector<std::uint8_t> bits(width, 0);
      std::fill(bits.begin(), bits.begin() + static_cast<long>(w), 1);
      const Word word(bits);
      const auto tr = synthesize_write_trace({word, word, drv, nominal_devices(kNominal, width), env}, 0.0, 1);
      if (w > 0) EXPECT_NEAR(prev - tr.samples[0], 75e-6, 1e-12);
      prev = tr.samples[0];
    }
  }
}

TEST(WriteTrace, ConstantCurrentIsFlat) {
  const DriverMode drv = DriverMode::constant_current();
  const Environment env = make_environment(kNominal, drv);
  EXPECT_NEAR(env.wordline_pulse, 2.0e-9, 1e-18);
  const WriteTransaction txn{Word::from_binary("0011"), Word::from_binary("1100"), drv, nominal_devices(kNominal, 4),
                             env};
  const CurrentTrace tr = synthesize_write_trace(txn, 0.0, 1);
  EXPECT_EQ(tr.samples.minCoeff(), tr.samples.maxCoeff());
  EXPECT_NEAR(tr.samples[0], 400e-6, 1e-15);
  const auto times = switch_times(txn);
  EXPECT_NEAR(*times[0], 1.0e-9, 1e-18);
  EXPECT_NEAR(*times[2], 0.6e-9, 1e-18);
  EXPECT_NEAR(*times[0] - *times[2], 0.4e-9, 1e-18);
}

TEST(ReadTrace, LevelsAndBounds) {
  const DriverMode drv = DriverMode::constant_voltage();
  const Environment env = make_environment(kNominal, drv);
  const auto devs = nominal_devices(kNominal, 4);
  EXPECT_NEAR(synthesize_read_trace(Word::from_binary("0000"), devs, env, 0.0, 1).samples[0], 120e-6, 1e-15);
  EXPECT_NEAR(synthesize_read_trace(Word::from_binary("1111"), devs, env, 0.0, 1).samples[0], 60e-6, 1e-15);
  for (std::uint64_t v = 0; v < 16; ++v) {
    const auto tr = synthesize_read_trace(Word::from_uint(v, 4), devs, env, 0.0, 1);
    EXPECT_LT(tr.samples.maxCoeff(), 300e-6);
    EXPECT_NEAR(tr.samples[0], 120e-6 - 15e-6 * Word::from_uint(v, 4).hamming_weight(), 1e-15);
  }
}

TEST(SwitchTimes, TemperatureDropWidens) {
  const DriverMode drv = DriverMode::constant_voltage();
  for (bool to_ap : {false, true}) {
    double prev = 0.0;
    for (double t = 400.0; t >= 250.0; t -= 10.0) {
      const double s = *per_bit_switch_time(!to_ap, to_ap, kNominal, make_environment(kNominal, drv, t), drv);
      EXPECT_GT(s, prev);
      prev = s;
    }
  }
}

TEST(SwitchTimes, TamperMultipliesExactly) {
  const DriverMode drv = DriverMode::constant_voltage();
  const double base = *per_bit_switch_time(false, true, kNominal, make_environment(kNominal, drv), drv);
  EXPECT_NEAR(base, 0.59e-9, 1e-21);
  for (double f : {1.0, 1.25, 1.5, 1.9}) {
    for (bool to_ap : {false, true}) {
      const double a = *per_bit_switch_time(!to_ap, to_ap, kNominal, make_environment(kNominal, drv), drv);
      const double b = *per_bit_switch_time(!to_ap, to_ap, kNominal, make_environment(kNominal, drv, 300.0, f), drv);
      EXPECT_NEAR(b / a, f, 1e-12);
    }
  }
  EXPECT_NEAR(*per_bit_switch_time(false, true, kNominal, make_environment(kNominal, drv, 300.0, 1.5), drv), 0.885e-9,
              1e-21);
}

TEST(SwitchTimes, WriteFailureCarriesBitIndex) {
  const DriverMode drv = DriverMode::constant_voltage();
  const auto txn = cv_txn(Word::from_binary("0000"), Word::from_binary("0010"), 300.0, 2.1);
  try {
    synthesize_write_trace(txn, 0.0, 1);
    FAIL() << "expected WriteFailure";
  } catch (const WriteFailure& e) {
    EXPECT_EQ(e.bit(), 2u);
    EXPECT_NEAR(e.switch_time(), 0.59e-9 * 2.1, 1e-21);
    EXPECT_NEAR(e.pulse(), 1.18e-9, 1e-21);
  }
  // The fast direction still fits at the same tamper level.
  EXPECT_NO_THROW(synthesize_write_trace(cv_txn(Word::from_binary("1"), Word::from_binary("0"), 300.0, 2.1), 0.0, 1));
}

TEST(Noise, DeterministicAndNonNegative) {
  const auto txn = cv_txn(Word::from_binary("0101"), Word::from_binary("1010"));
  const auto a = synthesize_write_trace(txn, 60e-6, 3);
  const auto b = synthesize_write_trace(txn, 60e-6, 3);
  const auto c = synthesize_write_trace(txn, 60e-6, 4);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, c.samples);
  EXPECT_GE(a.samples.minCoeff(), 0.0);
  EXPECT_THROW(synthesize_write_trace(txn, -1.0, 3), DomainError);
}

TEST(Noise, HeldAtInstrumentRate) {
  const auto txn = cv_txn(Word::from_binary("0000"), Word::from_binary("0000"));
  const auto held = synthesize_write_trace(txn, 60e-6, 5);
  const Eigen::VectorXd offset = held.samples.array() - 600e-6;
  // Samples 0..99 share the first draw, 100..118 the second.
  EXPECT_EQ(offset.head(100).maxCoeff(), offset.head(100).minCoeff());
  EXPECT_EQ(offset.tail(19).maxCoeff(), offset.tail(19).minCoeff());
  EXPECT_NE(offset[0], offset[118]);
  const auto white = synthesize_write_trace(txn, 60e-6, 5, SynthOptions{100e9, 0.0, 100e9});
  EXPECT_NE(white.samples[1], white.samples[2]);
  EXPECT_THROW(synthesize_write_trace(txn, 60e-6, 5, SynthOptions{100e9, 0.0, 0.0}), DomainError);
}

TEST(Noise, MarginalSigmaPerSample) {
  const auto txn = cv_txn(Word::from_binary("0000"), Word::from_binary("0000"));
  double ss = 0.0;
  const int n = 4000;
  for (int k = 0; k < n; ++k) {
    const double x = synthesize_write_trace(txn, 20e-6, static_cast<std::uint64_t>(k)).samples[57] - 600e-6;
    ss += x * x;
  }
  EXPECT_NEAR(std::sqrt(ss / n), 20e-6, 1e-6);
}

TEST(Smoothing, SettlesTowardNewLevel) {
  const auto txn = cv_txn(Word::from_binary("0000"), Word::from_binary("1111"));
  const auto tr = synthesize_write_trace(txn, 0.0, 1, SynthOptions{100e9, 0.05e-9});
  EXPECT_NEAR(tr.samples[0], 600e-6, 1e-15);
  EXPECT_NEAR(tr.samples[tr.samples.size() - 1], 300e-6, 1e-8);
  for (Eigen::Index j = 1; j < tr.samples.size(); ++j) EXPECT_LE(tr.samples[j], tr.samples[j - 1] + 1e-18);
}

TEST(Windows, CountsAndErrors) {
  const auto tr = synthesize_write_trace(cv_txn(Word::from_binary("01"), Word::from_binary("10")), 0.0, 1);
  EXPECT_EQ(window_sample_count(tr, 0.0, 0.1e-9), 11u);
  EXPECT_THROW(sample_window(tr, 0.5e-9, 0.4e-9), DomainError);
  EXPECT_THROW(sample_window(tr, 0.0, 5e-9), DomainError);
  EXPECT_THROW(sample_window(tr, 0.101e-9, 0.105e-9), DomainError);
}

TEST(Transactions, ShapeChecks) {
  auto txn = cv_txn(Word::from_binary("01"), Word::from_binary("10"));
  txn.devices.pop_back();
  EXPECT_THROW(synthesize_write_trace(txn, 0.0, 1), DomainError);
  EXPECT_THROW(synthesize_write_trace(cv_txn(Word::from_binary("01"), Word::from_binary("100")), 0.0, 1), DomainError);
  EXPECT_THROW(make_environment(kNominal, DriverMode::constant_voltage(), -3.0), ConfigError);
  EXPECT_THROW(make_environment(kNominal, DriverMode::constant_voltage(), 300.0, 0.5), ConfigError);
  EXPECT_EQ(parse_driver("cc"), DriverKind::ConstantCurrent);
  EXPECT_THROW(parse_driver("pwm"), ConfigError);
}

}  // namespace
}  // namespace sttsca
