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

// Closed-form MTJ behavioral model: thermal stability, retention, write
// latency, resistance and cell currents. Everything here is a pure function
// of value types, templated on the scalar so the same law can be evaluated
// on double, float or Eigen array expressions.

#include <cmath>
#include <limits>
#include <string>

#include "sttsca/errors.hpp"

namespace sttsca {

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K
inline constexpr double kReferenceTemperature = 300.0;  // K
inline constexpr double kSecondsPerYear = 365.25 * 86400.0;
inline constexpr double kRetentionCeiling = 1e18;  // s

/// Stored state of the free layer. '0' is parallel (low resistance), '1' is
/// anti-parallel (high resistance).
enum class BitState { P, AP };

constexpr BitState state_of(bool bit) { return bit ? BitState::AP : BitState::P; }

/// Switching direction. Writing '1' over '0' is P->AP (the slow direction).
enum class Direction { PToAP, APToP };

enum class CellMode { Write, Read };

template <typename Scalar = double>
struct DeviceParamsT {
  Scalar k_u;          // anisotropy energy density, J/m^3 (H_k * M_s / 2)
  Scalar area;         // free-layer area, m^2
  Scalar thickness;    // free-layer thickness, m
  Scalar tmr;          // (R_H - R_L) / R_L
  Scalar r_low;        // parallel resistance, ohm
  Scalar v_write_eff;  // voltage across the cell during a write, V
  Scalar v_supply;     // supply voltage driving the latency law, V
  Scalar read_current_fraction;
  Scalar tau0;         // slow-direction latency at delta0 and 1 V, s
  Scalar delta0;
  Scalar dir_asymmetry;  // fast / slow switching time

  Scalar volume() const { return area * thickness; }
  Scalar r_high() const { return r_low * (Scalar(1) + tmr); }

  /// 40 nm x 40 nm x 4 nm cell, calibrated to delta = 40 at 300 K and
  /// 0.59 ns slow-direction write latency at 1 V.
  static DeviceParamsT defaults() {
    DeviceParamsT p{};
    p.area = Scalar(40e-9 * 40e-9);
    p.thickness = Scalar(4e-9);
    p.delta0 = Scalar(40);
    p.k_u = Scalar(40.0 * kBoltzmann * kReferenceTemperature / (40e-9 * 40e-9 * 4e-9));
    p.tmr = Scalar(1.0);
    p.r_low = Scalar(5e3);
    p.v_write_eff = Scalar(0.75);
    p.v_supply = Scalar(1.0);
    p.read_current_fraction = Scalar(0.2);
    p.tau0 = Scalar(0.59e-9);
    p.dir_asymmetry = Scalar(0.6);
    return p;
  }

  bool operator==(const DeviceParamsT&) const = default;
};

using DeviceParams = DeviceParamsT<double>;

/// Throws ConfigError naming the first field that violates the model
/// invariants. Read current must stay below both write currents.
template <typename Scalar>
void validate(const DeviceParamsT<Scalar>& p) {
  auto positive = [](Scalar v, const char* name) {
    if (!(v > Scalar(0)) || !std::isfinite(static_cast<double>(v)))
      throw ConfigError(std::string("device.") + name + " must be finite and > 0");
  };
  positive(p.k_u, "k_u");
  positive(p.area, "area");
  positive(p.thickness, "thickness");
  positive(p.tmr, "tmr");
  positive(p.r_low, "r_low");
  positive(p.v_write_eff, "v_write_eff");
  positive(p.v_supply, "v_supply");
  positive(p.read_current_fraction, "read_current_fraction");
  positive(p.tau0, "tau0");
  positive(p.delta0, "delta0");
  positive(p.dir_asymmetry, "dir_asymmetry");
  if (p.dir_asymmetry > Scalar(1)) throw ConfigError("device.dir_asymmetry must be <= 1");
  if (p.read_current_fraction >= Scalar(1))
    throw ConfigError("device.read_current_fraction must be < 1");
  // Read current on a P cell against write current on an AP cell.
  if (p.read_current_fraction * (Scalar(1) + p.tmr) >= Scalar(1))
    throw ConfigError("device.read_current_fraction * (1 + tmr) must be < 1 (read disturb)");
}

/// Thermal stability factor, k_u * V / (k_B * T).
template <typename Scalar>
Scalar thermal_stability(const DeviceParamsT<Scalar>& p, Scalar temperature) {
  if (!(temperature > Scalar(0))) throw DomainError("temperature must be > 0 K");
  if (!(p.area > Scalar(0)) || !(p.thickness > Scalar(0)) || !(p.k_u > Scalar(0)))
    throw DomainError("geometry and anisotropy must be > 0");
  return p.k_u * p.volume() / (Scalar(kBoltzmann) * temperature);
}

struct RetentionFit {
  double c = 1.34e-9;  // s
  double k = 1.0;
};

struct RetentionTime {
  double seconds;
  bool saturated;  // true when c * exp(k * delta) exceeded kRetentionCeiling
};

/// c * exp(k * delta), clamped to kRetentionCeiling.
inline RetentionTime retention_time(double delta, const RetentionFit& fit) {
  if (!(delta >= 0.0)) throw DomainError("delta must be >= 0");
  if (!(fit.c > 0.0) || !(fit.k > 0.0)) throw DomainError("retention fit constants must be > 0");
  const double log_t = std::log(fit.c) + fit.k * delta;
  if (log_t >= std::log(kRetentionCeiling)) return {kRetentionCeiling, true};
  return {std::exp(log_t), false};
}

/// Latency scales linearly with delta and inversely with supply voltage
/// through the (delta0, tau0) anchor. The fast direction is dir_asymmetry
/// times the slow one.
template <typename Scalar>
Scalar write_latency(Scalar delta, Scalar supply_voltage, Direction dir, const DeviceParamsT<Scalar>& p) {
  if (!(delta > Scalar(0))) throw DomainError("delta must be > 0");
  if (!(supply_voltage > Scalar(0))) throw DomainError("supply voltage must be > 0");
  const Scalar d = dir == Direction::PToAP ? Scalar(1) : p.dir_asymmetry;
  return p.tau0 * (delta / p.delta0) * (Scalar(1) / supply_voltage) * d;
}

template <typename Scalar>
Scalar resistance(BitState s, const DeviceParamsT<Scalar>& p) {
  return s == BitState::P ? p.r_low : p.r_high();
}

template <typename Scalar>
Scalar cell_current(BitState s, CellMode mode, const DeviceParamsT<Scalar>& p) {
  const Scalar write = p.v_write_eff / resistance(s, p);
  return mode == CellMode::Write ? write : p.read_current_fraction * write;
}

/// Current step between adjacent Hamming weights, v * (1/R_L - 1/R_H).
template <typename Scalar>
Scalar level_gap(const DeviceParamsT<Scalar>& p) {
  return cell_current(BitState::P, CellMode::Write, p) - cell_current(BitState::AP, CellMode::Write, p);
}

/// Thickness scaled by factor, area untouched.
template <typename Scalar>
DeviceParamsT<Scalar> scale_volume(DeviceParamsT<Scalar> p, Scalar factor) {
  if (!(factor > Scalar(0))) throw DomainError("volume factor must be > 0");
  p.thickness *= factor;
  return p;
}

}  // namespace sttsca
