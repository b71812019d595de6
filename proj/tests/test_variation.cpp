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
#include <random>

#include <gtest/gtest.h>

#include "sttsca/errors.hpp"
#include "sttsca/variation.hpp"

namespace sttsca {
namespace {

const DeviceParams kNominal = DeviceParams::defaults();

double sample_mean(const Eigen::VectorXd& v) { return v.mean(); }
double sample_sd(const Eigen::VectorXd& v) {
  const double m = v.mean();
  return std::sqrt((v.array() - m).square().sum() / static_cast<double>(v.size() - 1));
}

Eigen::VectorXd normal_sample(std::size_t n, double mean, double sd, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(mean, sd);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = d(rng);
  return v;
}

TEST(Sampling, ZeroSigmaReproducesNominal) {
  const PvSample s = sample_devices(kNominal, PvModel{0.0, 0.0, 0.0}, 64, 7);
  for (const auto& d : s.devices()) EXPECT_EQ(d, kNominal);
  EXPECT_EQ(nominal_devices(kNominal, 3).size(), 3u);
}

TEST(Sampling, RelativeSpreadMatchesModel) {
  for (auto dist : {PvDistribution::Normal, PvDistribution::LogNormal}) {
    const PvSample s = sample_devices(kNominal, PvModel{0.05, 0.02, 0.06, dist}, 20000, 11);
    EXPECT_NEAR(sample_mean(s.delta_multiplier), 1.0, 0.002);
    const double cv = sample_sd(s.delta_multiplier) / sample_mean(s.delta_multiplier);
    EXPECT_GE(cv, 0.045);
    EXPECT_LE(cv, 0.055);
    EXPECT_NEAR(sample_sd(s.r_low) / kNominal.r_low, 0.02, 0.002);
    EXPECT_NEAR(sample_sd(s.tmr) / kNominal.tmr, 0.06, 0.003);
    EXPECT_GT(s.delta_multiplier.minCoeff(), 0.0);
  }
}

TEST(Sampling, PerBitStreamsAreStable) {
  const PvModel model;
  const PvSample small = sample_devices(kNominal, model, 10, 99);
  const PvSample large = sample_devices(kNominal, model, 1000, 99);
  const PvSample again = sample_devices(kNominal, model, 1000, 99);
  EXPECT_EQ(small.delta_multiplier, large.delta_multiplier.head(10));
  EXPECT_EQ(large.tmr, again.tmr);
  EXPECT_EQ(large.r_low, again.r_low);
  const PvSample other = sample_devices(kNominal, model, 10, 100);
  EXPECT_NE(small.delta_multiplier, other.delta_multiplier);
}

TEST(Sampling, DeviceScalesDelta) {
  const PvSample s = sample_devices(kNominal, PvModel{}, 8, 3);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(thermal_stability(s.device(i), 300.0), 40.0 * s.delta_multiplier[static_cast<Eigen::Index>(i)],
                1e-9);
  }
}

TEST(Sampling, RejectsBadInputs) {
  EXPECT_THROW(sample_devices(kNominal, PvModel{}, 0, 1), DomainError);
  EXPECT_THROW(sample_devices(kNominal, PvModel{0.5, 0.0, 0.0}, 4, 1), ConfigError);
  EXPECT_THROW(sample_devices(kNominal, PvModel{-0.1, 0.0, 0.0}, 4, 1), ConfigError);
}

TEST(Latency, WriteMeanTracksNominal) {
  const PvSample s = sample_devices(kNominal, PvModel{}, 5000, 1);
  const LatencySummary w = latency_distribution(s, 300.0, LatencyKind::Write);
  EXPECT_NEAR(w.mean, 0.59e-9, 0.01e-9);
  EXPECT_NEAR(w.sd / w.mean, 0.05, 0.005);
  std::size_t total = 0;
  for (auto c : w.histogram.counts) total += c;
  EXPECT_EQ(total, 5000u);
  EXPECT_EQ(w.histogram.edges.size(), 51u);
  EXPECT_EQ(w.histogram.edges.front(), w.min);
  EXPECT_EQ(w.histogram.edges.back(), w.max);
  EXPECT_TRUE(std::is_sorted(w.histogram.edges.begin(), w.histogram.edges.end()));
}

TEST(Latency, ReadTailHeavierThanWrite) {
  const PvSample s = sample_devices(kNominal, PvModel{0.05, 0.02, 0.05}, 5000, 4);
  for (double p : {2.0, 3.0, 4.0}) {
    const auto w = latency_values(s, 300.0, LatencyKind::Write);
    const auto r = latency_values(s, 300.0, LatencyKind::Read, ReadLatencyModel{1e-9, p});
    EXPECT_GT(r.maxCoeff() / r.mean(), w.maxCoeff() / w.mean()) << "p=" << p;
  }
}

TEST(Latency, DegenerateSummary) {
  const Eigen::VectorXd v = Eigen::VectorXd::Constant(10, 2.5);
  const LatencySummary s = summarize(v, 8);
  EXPECT_EQ(s.mean, 2.5);
  EXPECT_EQ(s.sd, 0.0);
  ASSERT_EQ(s.histogram.counts.size(), 1u);
  EXPECT_EQ(s.histogram.counts[0], 10u);
  EXPECT_THROW(summarize(Eigen::VectorXd(), 4), DomainError);
}

// Profile likelihood maximized by golden-section search over the scale.
struct GumbelOracle {
  double location;
  double scale;
};
GumbelOracle golden_gumbel(const std::vector<double>& x) {
  auto profile = [&](double beta) {
    double s = 0.0;
    for (double v : x) s += std::exp(-v / beta);
    const double mu = -beta * std::log(s / static_cast<double>(x.size()));
    double ll = 0.0;
    for (double v : x) {
      const double z = (v - mu) / beta;
      ll += -std::log(beta) - z - std::exp(-z);
    }
    return std::make_pair(ll, mu);
  };
  double lo = 1e-6, hi = 1.0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 300; ++i) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (profile(a).first > profile(b).first)
      hi = b;
    else
      lo = a;
  }
  const double beta = 0.5 * (lo + hi);
  return {profile(beta).second, beta};
}

TEST(Evt, GumbelFitMatchesLikelihoodOracle) {
  const Eigen::VectorXd v = normal_sample(5000, 1.0, 0.05, 21);
  const TailEstimate est = evt_extrapolate(v, kEightMegabyteBits);
  ASSERT_EQ(est.block_size, 100u);
  std::vector<double> maxima;
  for (int b = 0; b < 50; ++b) maxima.push_back(v.segment(b * 100, 100).maxCoeff());
  const GumbelOracle oracle = golden_gumbel(maxima);
  EXPECT_NEAR(est.gumbel_location, oracle.location, 1e-6);
  EXPECT_NEAR(est.gumbel_scale, oracle.scale, 1e-6);
  EXPECT_NEAR(est.estimated_max,
              std::max(est.sample_max, oracle.location +
                                           oracle.scale * (std::log(static_cast<double>(kEightMegabyteBits) / 100.0) +
                                                           0.57721566490153286)),
              1e-6);
}

TEST(Evt, ExactGumbelInputRecoversParameters) {
  std::mt19937_64 rng(5);
  std::extreme_value_distribution<double> gumbel(3.0, 0.2);
  Eigen::VectorXd v(20000);
  for (auto& x : v) x = gumbel(rng);
  const TailEstimate est = evt_extrapolate(v, 1'000'000);
  // Block maxima of Gumbel(mu, beta) over b draws are Gumbel(mu + beta ln b, beta).
  const double truth = 3.0 + 0.2 * (std::log(1e6) + 0.57721566490153286);
  EXPECT_NEAR(est.estimated_max, truth, 0.05 * truth);
}

TEST(Evt, GaussianCrossCheckAgrees) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Eigen::VectorXd v = normal_sample(5000, 1.0, 0.05, seed);
    const TailEstimate est = evt_extrapolate(v, kEightMegabyteBits);
    const double mean = v.mean();
    EXPECT_NEAR(est.gaussian_max, mean + sample_sd(v) * std::sqrt(2.0 * std::log(double(kEightMegabyteBits))), 1e-12);
    EXPECT_LT(std::abs(est.estimated_max - est.gaussian_max) / est.gaussian_max, 0.15);
  }
}

TEST(Evt, TargetAtSampleSizeNearSampleMax) {
  const Eigen::VectorXd v = normal_sample(5000, 1.0, 0.05, 8);
  const TailEstimate est = evt_extrapolate(v, 5000);
  EXPECT_GE(est.estimated_max, est.sample_max);
  EXPECT_LT(est.estimated_max / est.sample_max, 1.05);
}

TEST(Evt, MonotoneInTargetAndSigma) {
  const Eigen::VectorXd v = normal_sample(5000, 1.0, 0.05, 9);
  double prev = 0.0;
  for (std::uint64_t n = 5000; n <= (1ULL << 40); n *= 7) {
    const double m = evt_extrapolate(v, n).estimated_max;
    EXPECT_GE(m, prev);
    prev = m;
  }
  prev = 1.0;
  for (double sigma : {0.01, 0.03, 0.05, 0.08}) {
    const PvSample s = sample_devices(kNominal, PvModel{sigma, 0.0, 0.0}, 5000, 2);
    const double r = evt_extrapolate(latency_values(s, 300.0, LatencyKind::Write), kEightMegabyteBits).ratio_max_to_mean;
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(Evt, DegenerateAndInvalid) {
  const TailEstimate est = evt_extrapolate(Eigen::VectorXd::Constant(2000, 1e-9), kEightMegabyteBits);
  EXPECT_TRUE(est.degenerate);
  EXPECT_EQ(est.estimated_max, 1e-9);
  EXPECT_EQ(est.ratio_max_to_mean, 1.0);
  EXPECT_THROW(evt_extrapolate(Eigen::VectorXd::Constant(999, 1.0), 5000), DomainError);
  EXPECT_THROW(evt_extrapolate(normal_sample(2000, 1.0, 0.1, 1), 1000), DomainError);
}

TEST(Evt, Deterministic) {
  const PvSample a = sample_devices(kNominal, PvModel{}, 5000, 77);
  const PvSample b = sample_devices(kNominal, PvModel{}, 5000, 77);
  const auto ea = evt_extrapolate(latency_values(a, 300.0, LatencyKind::Read), kEightMegabyteBits);
  const auto eb = evt_extrapolate(latency_values(b, 300.0, LatencyKind::Read), kEightMegabyteBits);
  EXPECT_EQ(ea.estimated_max, eb.estimated_max);
  EXPECT_EQ(ea.gumbel_scale, eb.gumbel_scale);
}

}  // namespace
}  // namespace sttsca
