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

#include "sttsca/variation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <tuple>

#include <boost/math/constants/constants.hpp>
#include <boost/math/tools/roots.hpp>

#include "sttsca/errors.hpp"
#include "sttsca/rng.hpp"

namespace sttsca {

void validate(const PvModel& model) {
  auto check = [](double s, const char* name) {
    if (!(s >= 0.0 && s < 0.5)) throw ConfigError(std::string("pv.") + name + " must be in [0, 0.5)");
  };
  check(model.sigma_delta_rel, "sigma_delta_rel");
  check(model.sigma_r_rel, "sigma_r_rel");
  check(model.sigma_tmr_rel, "sigma_tmr_rel");
}

namespace {

// Mean-one multiplicative deviation with relative standard deviation sigma.
double draw_multiplier(Rng& rng, double sigma, PvDistribution dist) {
  if (sigma == 0.0) return 1.0;
  std::normal_distribution<double> normal(0.0, 1.0);
  if (dist == PvDistribution::LogNormal) {
    const double s = std::sqrt(std::log1p(sigma * sigma));
    return std::exp(s * normal(rng) - 0.5 * s * s);
  }
  // Truncated at zero; sigma < 0.5 keeps rejections rare.
  for (;;) {
    const double m = 1.0 + sigma * normal(rng);
    if (m > 0.0) return m;
  }
}

}  // namespace

DeviceParams PvSample::device(std::size_t bit) const {
  DeviceParams d = nominal;
  const auto i = static_cast<Eigen::Index>(bit);
  d.k_u = nominal.k_u * delta_multiplier[i];
  d.r_low = r_low[i];
  d.tmr = tmr[i];
  return d;
}

std::vector<DeviceParams> PvSample::devices() const {
  std::vector<DeviceParams> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(device(i));
  return out;
}

PvSample sample_devices(const DeviceParams& nominal, const PvModel& model, std::size_t count,
                        std::uint64_t seed) {
  if (count == 0) throw DomainError("sample_devices: count must be >= 1");
  validate(model);
  validate(nominal);

  PvSample s;
  s.nominal = nominal;
  s.model = model;
  s.seed = seed;
  const auto n = static_cast<Eigen::Index>(count);
  s.delta_multiplier.resize(n);
  s.r_low.resize(n);
  s.tmr.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Rng rng = make_stream(seed, {stream::kDevice, static_cast<std::uint64_t>(i)});
    s.delta_multiplier[i] = draw_multiplier(rng, model.sigma_delta_rel, model.distribution);
    s.r_low[i] = nominal.r_low * draw_multiplier(rng, model.sigma_r_rel, model.distribution);
    s.tmr[i] = nominal.tmr * draw_multiplier(rng, model.sigma_tmr_rel, model.distribution);
  }
  return s;
}

std::vector<DeviceParams> nominal_devices(const DeviceParams& nominal, std::size_t count) {
  return std::vector<DeviceParams>(count, nominal);
}

Eigen::VectorXd latency_values(const PvSample& sample, double temperature, LatencyKind kind,
                               const ReadLatencyModel& read_model) {
  const DeviceParams& nom = sample.nominal;
  if (kind == LatencyKind::Write) {
    const double delta_nominal = thermal_stability(nom, temperature);
    return sample.delta_multiplier.unaryExpr([&](double m) {
      return write_latency(delta_nominal * m, nom.v_supply, Direction::PToAP, nom);
    });
  }
  return (nom.tmr / sample.tmr.array()).pow(read_model.exponent).matrix() * read_model.tau_read0;
}

LatencySummary summarize(const Eigen::VectorXd& values, std::size_t bins) {
  if (values.size() == 0) throw DomainError("summarize: empty sample");
  if (bins == 0) throw DomainError("summarize: bins must be >= 1");
  LatencySummary out;
  out.min = values.minCoeff();
  out.max = values.maxCoeff();
  if (out.min == out.max) {
    out.mean = out.min;
    out.sd = 0.0;
    out.histogram.edges = {out.min, out.max};
    out.histogram.counts = {static_cast<std::size_t>(values.size())};
    return out;
  }
  // Sequential index-order reductions keep the summary bit-reproducible.
  double sum = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) sum += values[i];
  out.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) ss += (values[i] - out.mean) * (values[i] - out.mean);
  out.sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;

  const double width = (out.max - out.min) / static_cast<double>(bins);
  out.histogram.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) out.histogram.edges[b] = out.min + width * static_cast<double>(b);
  out.histogram.edges.back() = out.max;
  out.histogram.counts.assign(bins, 0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    auto b = static_cast<std::size_t>((values[i] - out.min) / width);
    out.histogram.counts[std::min(b, bins - 1)]++;
  }
  return out;
}

LatencySummary latency_distribution(const PvSample& sample, double temperature, LatencyKind kind,
                                    const ReadLatencyModel& read_model, std::size_t bins) {
  if (sample.size() == 0) throw DomainError("latency_distribution: empty sample");
  return summarize(latency_values(sample, temperature, kind, read_model), bins);
}

namespace {

struct GumbelFit {
  double location;
  double scale;
};

// Maximum-likelihood Gumbel fit on standardized data. The scale equation
// beta = mean(x) - sum(x e^{-x/beta}) / sum(e^{-x/beta}) is monotone in beta.
GumbelFit fit_gumbel(const Eigen::VectorXd& maxima) {
  const double mean = maxima.mean();
  const double sd = std::sqrt((maxima.array() - mean).square().sum() / static_cast<double>(maxima.size() - 1));
  const Eigen::ArrayXd z = (maxima.array() - mean) / sd;
  const double pi = boost::math::constants::pi<double>();

  auto score = [&](double beta) {
    const Eigen::ArrayXd w = (-z / beta).exp();
    const double sw = w.sum();
    const double sxw = (z * w).sum();
    const double sxxw = (z * z * w).sum();
    const double g = beta + sxw / sw;  // mean(z) == 0
    const double var_w = sxxw / sw - (sxw / sw) * (sxw / sw);
    const double dg = 1.0 + var_w / (beta * beta);
    return std::make_tuple(g, dg);
  };
  const double guess = std::sqrt(6.0) / pi;  // moments estimate for unit variance
  std::uintmax_t iters = 200;
  const double beta = boost::math::tools::newton_raphson_iterate(score, guess, 1e-3, 1e3, 50, iters);
  const double loc = -beta * std::log((-z / beta).exp().mean());
  return {mean + sd * loc, sd * beta};
}

}  // namespace

TailEstimate evt_extrapolate(const Eigen::VectorXd& sample_latencies, std::uint64_t target_population) {
  const auto n = static_cast<std::size_t>(sample_latencies.size());
  if (n < kEvtMinSamples) throw DomainError("evt_extrapolate: needs at least 1000 sample points");
  if (target_population < n) throw DomainError("evt_extrapolate: target population below sample size");

  TailEstimate est;
  est.population_size = target_population;
  est.method = TailMethod::GumbelFit;
  const LatencySummary summary = summarize(sample_latencies, 1);
  est.mean = summary.mean;
  est.sample_max = summary.max;
  if (summary.sd == 0.0) {
    est.degenerate = true;
    est.estimated_max = summary.max;
    est.gaussian_max = summary.max;
    est.ratio_max_to_mean = 1.0;
    return est;
  }

  const double log_n = std::log(static_cast<double>(target_population));
  est.gaussian_max = summary.mean + summary.sd * std::sqrt(2.0 * log_n);

  const std::size_t block = (n + kEvtBlocks - 1) / kEvtBlocks;
  const std::size_t blocks = n / block;
  est.block_size = block;
  Eigen::VectorXd maxima(static_cast<Eigen::Index>(blocks));
  for (std::size_t b = 0; b < blocks; ++b)
    maxima[static_cast<Eigen::Index>(b)] =
        sample_latencies.segment(static_cast<Eigen::Index>(b * block), static_cast<Eigen::Index>(block)).maxCoeff();

  const GumbelFit fit = fit_gumbel(maxima);
  est.gumbel_location = fit.location;
  est.gumbel_scale = fit.scale;
  // Max over N draws is the max over N / block block-maxima: the Gumbel
  // location shifts by scale * ln(N / block).
  const double euler = boost::math::constants::euler<double>();
  const double shift = std::log(static_cast<double>(target_population) / static_cast<double>(block));
  const double expected = fit.location + fit.scale * (shift + euler);
  est.estimated_max = std::max(expected, est.sample_max);
  est.ratio_max_to_mean = est.estimated_max / est.mean;
  return est;
}

}  // namespace sttsca
