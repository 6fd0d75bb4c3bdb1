// Copyright 2026 The platoon-stab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "platoon/model.hpp"

namespace platoon {

/// z_1 = 0.
struct ZeroInput {};

/// z_1(t) = amplitude * sin(omega t).
struct SineInput {
  double amplitude = 1.0;  ///< [m]
  double omega = 1.0;      ///< [rad/s]
};

/// z_1 given on a uniform time grid (value and derivative per sample),
/// cubic-Hermite interpolated in between and held constant past the end.
struct SampledInput {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> value;
  std::vector<double> derivative;
};

using InputSignal = std::variant<ZeroInput, SineInput, SampledInput>;

/// z_1 and dz_1/dt at time t.
struct InputSample {
  double value = 0.0;
  double derivative = 0.0;
};

InputSample sample_input(const InputSignal& input, double t) noexcept;

struct SimConfig {
  double dt = 0.01;        ///< step [s]
  double duration = 10.0;  ///< total simulated time [s]
  InputSignal input = ZeroInput{};
  double discard_fraction = 0.7;  ///< leading share of the run treated as transient

  /// Throws ValidationError unless dt > 0, duration >= 100 dt and
  /// 0 <= discard_fraction < 1.
  void validate() const;
  std::size_t steps() const noexcept;
};

/// min(2 pi / (200 omega), 1 / (20 sqrt(a0))); the first term is skipped
/// when omega <= 0.
double default_time_step(const ErrorModel& model, double omega) noexcept;

/// Snapshot of one step of an error-chain run.
struct ChainState {
  double t = 0.0;
  std::vector<double> z;     ///< z_1 .. z_n [m]
  std::vector<double> zdot;  ///< [m/s]
};

/// Error-chain trajectory stored row-major, one row of `channels` values per
/// step. Channel 0 is z_1.
class ChainSeries {
 public:
  ChainSeries() = default;
  ChainSeries(std::size_t channels, std::size_t reserve_steps);

  void push(double t, std::span<const double> z, std::span<const double> zdot);

  std::size_t channels() const noexcept { return channels_; }
  std::size_t steps() const noexcept { return t_.size(); }
  double time(std::size_t step) const noexcept { return t_[step]; }
  double z(std::size_t step, std::size_t channel) const noexcept { return z_[step * channels_ + channel]; }
  double zdot(std::size_t step, std::size_t channel) const noexcept {
    return zdot_[step * channels_ + channel];
  }
  ChainState state(std::size_t step) const;

  /// `t,z_1,...,z_n`
  void write_csv(std::ostream& out) const;

 private:
  std::size_t channels_ = 0;
  std::vector<double> t_;
  std::vector<double> z_;
  std::vector<double> zdot_;
};

/// Integrates z_i'' = -a1 z_i' - a0 z_i + b1 z_{i-1}' + b0 z_{i-1} for
/// i = 2..n with classical RK4, z_1 from cfg.input, zero initial state.
/// Throws ValidationError (n < 2, bad config) or DivergenceError.
ChainSeries simulate_chain(const ErrorModel& model, std::size_t n, const SimConfig& cfg);

/// Leader force u(t) [N].
using LeaderForce = std::function<double(double)>;

/// Positions and velocities of the full uni_cs platoon plus the leader force.
class StateSpaceSeries {
 public:
  StateSpaceSeries(std::size_t vehicles, double spacing, std::size_t reserve_steps);

  void push(double t, std::span<const double> x, std::span<const double> v, double u);

  std::size_t vehicles() const noexcept { return vehicles_; }
  std::size_t steps() const noexcept { return t_.size(); }
  double spacing() const noexcept { return spacing_; }
  double time(std::size_t step) const noexcept { return t_[step]; }
  double x(std::size_t step, std::size_t vehicle) const noexcept { return x_[step * vehicles_ + vehicle]; }
  double v(std::size_t step, std::size_t vehicle) const noexcept { return v_[step * vehicles_ + vehicle]; }
  double u(std::size_t step) const noexcept { return u_[step]; }

  /// z_i = x_i - x_{i+1} - spacing, i = 1..n-1, as an error chain.
  ChainSeries spacing_errors() const;

  /// `t,x_1,v_1,...,x_n,v_n`
  void write_csv(std::ostream& out) const;

 private:
  std::size_t vehicles_;
  double spacing_;
  std::vector<double> t_;
  std::vector<double> x_;
  std::vector<double> v_;
  std::vector<double> u_;
};

/// Integrates x_1' = v_1, v_1' = u/m and, for followers,
/// v_i' = k/m (x_{i-1} - x_i - spacing) + c/m (v_{i-1} - v_i). Vehicles start
/// at rest, `spacing` apart. cfg.input is not used. Throws like
/// simulate_chain plus InvalidPlatoonError.
StateSpaceSeries simulate_state_space_uni_cs(const PlatoonParams& p, const SimConfig& cfg,
                                             const LeaderForce& leader_force, double spacing = 0.0);

struct AttenuationReport {
  /// ratios[j] = max|z_{j+2}| / max|z_{j+1}| over the retained window.
  std::vector<double> ratios;
  double window_start = 0.0;  ///< first retained time [s]
  bool attenuates = false;    ///< every ratio < 1
};

/// Throws DegenerateInputError when a reference amplitude is below 1e-12 and
/// ValidationError when the retained window is empty or the series has fewer
/// than two channels.
AttenuationReport attenuation_report(const ChainSeries& series, double discard_fraction);

/// Drive for simulate_chain reproducing channel 0 of `series` exactly at
/// every step.
SampledInput sampled_from_channel(const ChainSeries& series, std::size_t channel);

}  // namespace platoon
