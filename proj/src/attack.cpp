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

#include "sttsca/attack.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "sttsca/defense.hpp"
#include "sttsca/errors.hpp"
#include "sttsca/rng.hpp"

namespace sttsca {

double AttackConfig::expected_level(int hamming_weight) const {
  const auto n = static_cast<double>(word_width);
  return (n - hamming_weight) * level_p + hamming_weight * level_ap;
}

AttackConfig make_attack_config(std::size_t word_width, const DriverMode& driver, const DeviceParams& nominal,
                                const Environment& env) {
  if (word_width < 1 || word_width > kMaxWordWidth) throw DomainError("attack word width must be in [1, 512]");
  validate(nominal);
  validate(driver);
  validate(env);

  AttackConfig c;
  c.word_width = word_width;
  c.driver = driver;
  c.nominal = nominal;
  c.env = env;
  c.level_p = cell_current(BitState::P, CellMode::Write, nominal);
  c.level_ap = cell_current(BitState::AP, CellMode::Write, nominal);

  const double fastest = *per_bit_switch_time(true, false, nominal, env, driver);
  const double slowest = *per_bit_switch_time(false, true, nominal, env, driver);
  c.pre_switch = {0.05 * fastest, 0.80 * fastest};
  c.post_switch = {1.20 * slowest, env.wordline_pulse};
  if (!(c.post_switch.start < c.post_switch.end))
    throw DomainError("post-switch window is empty: slowest switch too close to the pulse end");
  return c;
}

namespace {

struct Quantized {
  int hw;
  bool low_confidence;
};

Quantized quantize(double level, const AttackConfig& c) {
  const auto n = static_cast<int>(c.word_width);
  const double gap = c.gap();
  const double m = std::round((c.expected_level(0) - level) / gap);
  const int hw = static_cast<int>(std::clamp(m, 0.0, static_cast<double>(n)));
  return {hw, std::abs(level - c.expected_level(hw)) > 0.5 * gap};
}

BigCount power_of_two(std::size_t bits) { return BigCount(1) << bits; }

}  // namespace

AttackInference spa_infer(const CurrentTrace& trace, const AttackConfig& config) {
  AttackInference inf;
  const std::size_t n = config.word_width;
  if (config.driver.kind == DriverKind::ConstantCurrent) {
    inf.residual_candidates = power_of_two(2 * n);
    inf.effort_bits = 2.0 * static_cast<double>(n);
    if (trace.size() > 0) inf.level_old = inf.level_new = trace.samples.mean();
    return inf;
  }
  if (trace.size() == 0 || trace.end_time() < config.post_switch.start)
    throw DomainError("trace does not cover the post-switch attack window");

  inf.level_old = sample_window(trace, config.pre_switch.start, config.pre_switch.end);
  inf.level_new = sample_window(trace, config.post_switch.start, std::min(config.post_switch.end, trace.end_time()));
  const Quantized q_old = quantize(inf.level_old, config);
  const Quantized q_new = quantize(inf.level_new, config);
  inf.hw_old = q_old.hw;
  inf.hw_new = q_new.hw;
  inf.low_confidence = q_old.low_confidence || q_new.low_confidence;
  const int width = static_cast<int>(n);
  inf.residual_candidates = binomial(width, q_old.hw) * binomial(width, q_new.hw);
  inf.effort_bits = log2_big(inf.residual_candidates);
  return inf;
}

CurrentTrace average_traces(std::span<const CurrentTrace> traces) {
  if (traces.empty()) throw DomainError("need at least one trace");
  const CurrentTrace& first = traces.front();
  CurrentTrace avg = first;
  for (std::size_t k = 1; k < traces.size(); ++k) {
    const CurrentTrace& t = traces[k];
    if (t.size() != first.size() || t.sample_rate != first.sample_rate || t.t0 != first.t0)
      throw DomainError("traces differ in shape");
    avg.samples += t.samples;
  }
  if (traces.size() > 1) avg.samples /= static_cast<double>(traces.size());
  return avg;
}

AttackInference dpa_infer(std::span<const CurrentTrace> traces, const AttackConfig& config) {
  return spa_infer(average_traces(traces), config);
}

CandidateSpace candidate_space(const AttackInference& inference, int data_width, const EncodingScheme& scheme) {
  if (data_width < 1) throw DomainError("data width must be >= 1");
  auto side = [&](const std::optional<int>& e) {
    if (!e) return power_of_two(static_cast<std::size_t>(data_width));
    BigCount c = consistent_data_words(data_width, scheme, *e);
    // An observation the scheme cannot produce carries no information.
    return c == 0 ? power_of_two(static_cast<std::size_t>(data_width)) : c;
  };
  CandidateSpace out;
  out.count = side(inference.hw_old) * side(inference.hw_new);
  out.effort_bits = log2_big(out.count);
  return out;
}

CampaignReport attack_campaign(const AttackConfig& config, const EncodingScheme& scheme,
                               const CampaignOptions& options) {
  if (options.trials < 1) throw DomainError("campaign needs at least one trial");
  if (options.traces_per_trial < 1) throw DomainError("campaign needs at least one trace per trial");
  const std::size_t cells = config.word_width;
  if (cells <= static_cast<std::size_t>(scheme.overhead()))
    throw DomainError("word width leaves no data bits after encoding overhead");
  const std::size_t data_width = cells - static_cast<std::size_t>(scheme.overhead());

  const std::vector<DeviceParams> devices = options.victim_pv
                                                ? sample_devices(config.nominal, *options.victim_pv, cells, options.seed).devices()
                                                : nominal_devices(config.nominal, cells);
  const std::uint64_t seed = options.seed;

  auto run_trial = [&](std::size_t t) {
    const auto ti = static_cast<std::uint64_t>(t);
    Rng rng = make_stream(seed, {stream::kTrial, ti});
    TrialRecord rec;
    rec.old_data = Word::random(data_width, rng);
    rec.new_data = Word::random(data_width, rng);
    WriteTransaction txn{encode(rec.old_data, scheme, derive_seed(seed, {stream::kEncode, ti, 0})),
                         encode(rec.new_data, scheme, derive_seed(seed, {stream::kEncode, ti, 1})), config.driver,
                         devices, config.env};
    rec.hw_old_true = txn.old_word.hamming_weight();
    rec.hw_new_true = txn.new_word.hamming_weight();

    const std::size_t k_traces = options.noise_sigma == 0.0 ? 1 : options.traces_per_trial;
    std::vector<CurrentTrace> traces;
    traces.reserve(k_traces);
    for (std::size_t k = 0; k < k_traces; ++k)
      traces.push_back(synthesize_write_trace(txn, options.noise_sigma,
                                              derive_seed(seed, {stream::kNoise, ti, static_cast<std::uint64_t>(k)}),
                                              options.synth));
    const AttackInference inf = dpa_infer(traces, config);

    Rng guess_rng = make_stream(seed, {stream::kGuess, ti});
    std::uniform_int_distribution<int> guess(0, static_cast<int>(cells));
    const int g_old = guess(guess_rng);
    const int g_new = guess(guess_rng);
    rec.hw_old_est = inf.hw_old;
    rec.hw_new_est = inf.hw_new;
    rec.old_correct = inf.hw_old.value_or(g_old) == rec.hw_old_true;
    rec.new_correct = inf.hw_new.value_or(g_new) == rec.hw_new_true;
    rec.low_confidence = inf.low_confidence;
    rec.effort_bits = candidate_space(inf, static_cast<int>(data_width), scheme).effort_bits;
    return rec;
  };

  CampaignReport report;
  report.trials = options.trials;
  report.seed = seed;
  report.records.resize(options.trials);

  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, options.trials);
  struct Failure {
    std::size_t trial = std::numeric_limits<std::size_t>::max();
    std::exception_ptr error;
  };
  std::vector<Failure> failures(workers);
  auto work = [&](std::size_t w) {
    for (std::size_t t = w; t < options.trials; t += workers) {
      try {
        report.records[t] = run_trial(t);
      } catch (...) {
        failures[w] = {t, std::current_exception()};
        return;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  // Surface the failure of the lowest trial index so errors are reproducible too.
  const auto first = std::min_element(failures.begin(), failures.end(),
                                      [](const Failure& a, const Failure& b) { return a.trial < b.trial; });
  if (first->error) std::rethrow_exception(first->error);

  std::size_t ok_old = 0;
  std::size_t ok_new = 0;
  double effort = 0.0;
  for (const auto& r : report.records) {
    ok_old += r.old_correct;
    ok_new += r.new_correct;
    effort += r.effort_bits;
  }
  const auto trials = static_cast<double>(options.trials);
  report.accuracy_old = static_cast<double>(ok_old) / trials;
  report.accuracy_new = static_cast<double>(ok_new) / trials;
  report.mean_effort_bits = effort / trials;
  return report;
}

std::size_t clean_pre_switch_samples(const WriteTransaction& txn, const SynthOptions& options) {
  const auto times = switch_times(txn);
  const std::size_t total = static_cast<std::size_t>(std::floor(txn.env.wordline_pulse * options.sample_rate + 1e-9)) + 1;
  double earliest = std::numeric_limits<double>::infinity();
  for (const auto& t : times)
    if (t) earliest = std::min(earliest, *t);
  if (!std::isfinite(earliest)) return total;
  return std::min(total, static_cast<std::size_t>(std::ceil(earliest * options.sample_rate - 1e-9)));
}

}  // namespace sttsca
