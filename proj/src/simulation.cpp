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

#include "platoon/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "platoon/error.hpp"
#include "platoon/numfmt.hpp"

namespace platoon {

namespace {

constexpr double kDegenerateAmplitude = 1e-12;

/// Classical fourth-order Runge-Kutta on a flat state vector. `Rhs` fills
/// dy/dt for (t, y).
template <typename Rhs>
class Rk4 {
 public:
  Rk4(std::size_t dim, Rhs rhs) : rhs_(std::move(rhs)), k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  void step(double t, double dt, std::vector<double>& y) {
    const std::size_t n = y.size();
    rhs_(t, y, k1_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k1_[i];
    rhs_(t + 0.5 * dt, tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k2_[i];
    rhs_(t + 0.5 * dt, tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + dt * k3_[i];
    rhs_(t + dt, tmp_, k4_);
    for (std::size_t i = 0; i < n; ++i) y[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  Rhs rhs_;
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

bool all_finite(const std::vector<double>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

void append_row(std::string& buf, double t, std::span<const double> values) {
  append_double(buf, t);
  for (double v : values) {
    buf += ',';
    append_double(buf, v);
  }
  buf += '\n';
}

}  // namespace

InputSample sample_input(const InputSignal& input, double t) noexcept {
  struct Visitor {
    double t;
    InputSample operator()(const ZeroInput&) const { return {}; }
    InputSample operator()(const SineInput& s) const {
      const double phase = s.omega * t;
      return {s.amplitude * std::sin(phase), s.amplitude * s.omega * std::cos(phase)};
    }
    InputSample operator()(const SampledInput& s) const {
      const std::size_t count = std::min(s.value.size(), s.derivative.size());
      if (count == 0) return {};
      const double pos = (t - s.t0) / s.dt;
      if (!(pos > 0)) return {s.value.front(), s.derivative.front()};
      if (pos >= static_cast<double>(count - 1)) return {s.value[count - 1], s.derivative[count - 1]};
      const auto j = static_cast<std::size_t>(pos);
      const double u = pos - static_cast<double>(j);
      const double p0 = s.value[j], p1 = s.value[j + 1];
      const double m0 = s.derivative[j] * s.dt, m1 = s.derivative[j + 1] * s.dt;
      const double u2 = u * u, u3 = u2 * u;
      const double value =
          (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * m0 + (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * m1;
      const double slope =
          (6 * u2 - 6 * u) * p0 + (3 * u2 - 4 * u + 1) * m0 + (-6 * u2 + 6 * u) * p1 + (3 * u2 - 2 * u) * m1;
      return {value, slope / s.dt};
    }
  };
  return std::visit(Visitor{t}, input);
}

void SimConfig::validate() const {
  if (!(dt > 0) || !std::isfinite(dt)) throw ValidationError("dt must be positive and finite");
  if (!std::isfinite(duration) || !(duration >= 100.0 * dt)) {
    throw ValidationError("duration must be at least 100 steps");
  }
  if (!(discard_fraction >= 0.0 && discard_fraction < 1.0)) {
    throw ValidationError("discard fraction must lie in [0, 1)");
  }
  if (const auto* s = std::get_if<SineInput>(&input)) {
    if (!std::isfinite(s->amplitude) || !std::isfinite(s->omega)) {
      throw ValidationError("sinusoidal input must have finite amplitude and frequency");
    }
  }
  if (const auto* s = std::get_if<SampledInput>(&input)) {
    if (!(s->dt > 0) || s->value.size() != s->derivative.size() || s->value.empty()) {
      throw ValidationError("sampled input needs dt > 0 and matching, nonempty samples");
    }
  }
}

std::size_t SimConfig::steps() const noexcept {
  return static_cast<std::size_t>(std::llround(duration / dt));
}

double default_time_step(const ErrorModel& model, double omega) noexcept {
  double dt = 1.0 / (20.0 * std::sqrt(model.a0));
  if (omega > 0) dt = std::min(dt, 2.0 * std::numbers::pi / (200.0 * omega));
  return dt;
}

ChainSeries::ChainSeries(std::size_t channels, std::size_t reserve_steps) : channels_(channels) {
  t_.reserve(reserve_steps);
  z_.reserve(reserve_steps * channels);
  zdot_.reserve(reserve_steps * channels);
}

void ChainSeries::push(double t, std::span<const double> z, std::span<const double> zdot) {
  t_.push_back(t);
  z_.insert(z_.end(), z.begin(), z.end());
  zdot_.insert(zdot_.end(), zdot.begin(), zdot.end());
}

ChainState ChainSeries::state(std::size_t step) const {
  ChainState s;
  s.t = t_[step];
  const auto first = static_cast<std::ptrdiff_t>(step * channels_);
  const auto last = first + static_cast<std::ptrdiff_t>(channels_);
  s.z.assign(z_.begin() + first, z_.begin() + last);
  s.zdot.assign(zdot_.begin() + first, zdot_.begin() + last);
  return s;
}

void ChainSeries::write_csv(std::ostream& out) const {
  std::string buf = "t";
  for (std::size_t i = 1; i <= channels_; ++i) buf += ",z_" + std::to_string(i);
  buf += '\n';
  for (std::size_t step = 0; step < steps(); ++step) {
    append_row(buf, t_[step], std::span<const double>(z_).subspan(step * channels_, channels_));
    if (buf.size() > (1u << 20)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

ChainSeries simulate_chain(const ErrorModel& model, std::size_t n, const SimConfig& cfg) {
  if (n < 2) throw ValidationError("error chain needs at least 2 channels");
  cfg.validate();

  const std::size_t followers = n - 1;  // integrated channels z_2 .. z_n
  const std::size_t steps = cfg.steps();
  // y = [z_2, z_2', z_3, z_3', ...]
  std::vector<double> y(2 * followers, 0.0);

  auto rhs = [&](double t, const std::vector<double>& s, std::vector<double>& dy) {
    const InputSample in = sample_input(cfg.input, t);
    double prev = in.value, prev_dot = in.derivative;
    for (std::size_t j = 0; j < followers; ++j) {
      const double z = s[2 * j], zd = s[2 * j + 1];
      dy[2 * j] = zd;
      dy[2 * j + 1] = -model.a1 * zd - model.a0 * z + model.b1 * prev_dot + model.b0 * prev;
      prev = z;
      prev_dot = zd;
    }
  };
  Rk4 integrator(y.size(), rhs);

  ChainSeries series(n, steps + 1);
  std::vector<double> z(n), zdot(n);
  auto record = [&](double t) {
    const InputSample in = sample_input(cfg.input, t);
    z[0] = in.value;
    zdot[0] = in.derivative;
    for (std::size_t j = 0; j < followers; ++j) {
      z[j + 1] = y[2 * j];
      zdot[j + 1] = y[2 * j + 1];
    }
    series.push(t, z, zdot);
  };

  record(0.0);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = static_cast<double>(step) * cfg.dt;
    integrator.step(t, cfg.dt, y);
    const double t_next = static_cast<double>(step + 1) * cfg.dt;
    if (!all_finite(y)) throw DivergenceError("error chain diverged at t = " + format_double(t_next), t_next);
    record(t_next);
  }
  return series;
}

StateSpaceSeries::StateSpaceSeries(std::size_t vehicles, double spacing, std::size_t reserve_steps)
    : vehicles_(vehicles), spacing_(spacing) {
  t_.reserve(reserve_steps);
  x_.reserve(reserve_steps * vehicles);
  v_.reserve(reserve_steps * vehicles);
  u_.reserve(reserve_steps);
}

void StateSpaceSeries::push(double t, std::span<const double> x, std::span<const double> v, double u) {
  t_.push_back(t);
  x_.insert(x_.end(), x.begin(), x.end());
  v_.insert(v_.end(), v.begin(), v.end());
  u_.push_back(u);
}

ChainSeries StateSpaceSeries::spacing_errors() const {
  const std::size_t channels = vehicles_ - 1;
  ChainSeries out(channels, steps());
  std::vector<double> z(channels), zdot(channels);
  for (std::size_t step = 0; step < steps(); ++step) {
    for (std::size_t i = 0; i < channels; ++i) {
      z[i] = x(step, i) - x(step, i + 1) - spacing_;
      zdot[i] = v(step, i) - v(step, i + 1);
    }
    out.push(t_[step], z, zdot);
  }
  return out;
}

void StateSpaceSeries::write_csv(std::ostream& out) const {
  std::string buf = "t";
  for (std::size_t i = 1; i <= vehicles_; ++i) {
    buf += ",x_" + std::to_string(i) + ",v_" + std::to_string(i);
  }
  buf += '\n';
  for (std::size_t step = 0; step < steps(); ++step) {
    append_double(buf, t_[step]);
    for (std::size_t i = 0; i < vehicles_; ++i) {
      buf += ',';
      append_double(buf, x(step, i));
      buf += ',';
      append_double(buf, v(step, i));
    }
    buf += '\n';
    if (buf.size() > (1u << 20)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

StateSpaceSeries simulate_state_space_uni_cs(const PlatoonParams& p, const SimConfig& cfg,
                                             const LeaderForce& leader_force, double spacing) {
  require_valid_platoon(p);
  cfg.validate();
  if (!std::isfinite(spacing)) throw ValidationError("spacing must be finite");

  const auto n = static_cast<std::size_t>(p.n);
  const double km = p.k / p.m, cm = p.c / p.m;
  const std::size_t steps = cfg.steps();
  // y = [x_1 .. x_n, v_1 .. v_n]
  std::vector<double> y(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) y[i] = -static_cast<double>(i) * spacing;

  auto rhs = [&](double t, const std::vector<double>& s, std::vector<double>& dy) {
    const double* x = s.data();
    const double* v = s.data() + n;
    for (std::size_t i = 0; i < n; ++i) dy[i] = v[i];
    dy[n] = leader_force(t) / p.m;
    for (std::size_t i = 1; i < n; ++i) {
      dy[n + i] = km * (x[i - 1] - x[i] - spacing) + cm * (v[i - 1] - v[i]);
    }
  };
  Rk4 integrator(y.size(), rhs);

  StateSpaceSeries series(n, spacing, steps + 1);
  auto record = [&](double t) {
    series.push(t, std::span<const double>(y).first(n), std::span<const double>(y).subspan(n), leader_force(t));
  };

  record(0.0);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = static_cast<double>(step) * cfg.dt;
    integrator.step(t, cfg.dt, y);
    const double t_next = static_cast<double>(step + 1) * cfg.dt;
    if (!all_finite(y)) throw DivergenceError("state-space run diverged at t = " + format_double(t_next), t_next);
    record(t_next);
  }
  return series;
}

AttenuationReport attenuation_report(const ChainSeries& series, double discard_fraction) {
  if (series.channels() < 2) throw ValidationError("attenuation needs at least two channels");
  if (series.steps() == 0) throw ValidationError("empty series");
  if (!(discard_fraction >= 0.0 && discard_fraction < 1.0)) {
    throw ValidationError("discard fraction must lie in [0, 1)");
  }
  const double t_first = series.time(0);
  const double t_last = series.time(series.steps() - 1);
  const double window_start = t_first + discard_fraction * (t_last - t_first);

  std::vector<double> peak(series.channels(), 0.0);
  std::size_t retained = 0;
  for (std::size_t step = 0; step < series.steps(); ++step) {
    if (series.time(step) < window_start) continue;
    ++retained;
    for (std::size_t i = 0; i < series.channels(); ++i) peak[i] = std::max(peak[i], std::abs(series.z(step, i)));
  }
  if (retained == 0) throw ValidationError("retained window is empty");

  AttenuationReport report;
  report.window_start = window_start;
  report.attenuates = true;
  for (std::size_t i = 1; i < series.channels(); ++i) {
    if (peak[i - 1] < kDegenerateAmplitude) {
      throw DegenerateInputError("reference amplitude of z_" + std::to_string(i) + " is below 1e-12");
    }
    const double r = peak[i] / peak[i - 1];
    report.ratios.push_back(r);
    report.attenuates = report.attenuates && r < 1.0;
  }
  return report;
}

SampledInput sampled_from_channel(const ChainSeries& series, std::size_t channel) {
  SampledInput in;
  if (series.steps() < 2) throw ValidationError("need at least two samples");
  in.t0 = series.time(0);
  in.dt = series.time(1) - series.time(0);
  in.value.reserve(series.steps());
  in.derivative.reserve(series.steps());
  for (std::size_t step = 0; step < series.steps(); ++step) {
    in.value.push_back(series.z(step, channel));
    in.derivative.push_back(series.zdot(step, channel));
  }
  return in;
}

}  // namespace platoon
