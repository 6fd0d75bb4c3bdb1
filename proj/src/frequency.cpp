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

#include "platoon/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "platoon/error.hpp"
#include "platoon/numfmt.hpp"

namespace platoon {

namespace {

constexpr double kSingularModulus = 1e-300;

}  // namespace

std::complex<double> TransferFunction::operator()(std::complex<double> s) const {
  const auto den = denominator(s);
  if (std::abs(den) < kSingularModulus) throw SingularityError("transfer function denominator vanishes");
  return numerator(s) / den;
}

TransferFunction transfer_function(const ErrorModel& model) noexcept { return TransferFunction(model); }

FrequencyResponse frequency_response(const TransferFunction& tf, double omega) {
  if (!std::isfinite(omega)) throw ValidationError("omega must be finite");
  const std::complex<double> s(0.0, omega);
  const auto num = tf.numerator(s);
  const auto den = tf.denominator(s);
  const double den_mod = std::abs(den);
  if (den_mod < kSingularModulus) {
    throw SingularityError("transfer function denominator vanishes at omega = " + format_double(omega));
  }
  // Ratio of moduli rather than |num / den|: one rounding fewer at |H| = 1.
  return {omega, num / den, std::abs(num) / den_mod};
}

bool is_stable_at(const ErrorModel& model, double omega) {
  if (!(omega > 0)) throw ValidationError("stability is defined for 0 < omega only");
  return frequency_response(TransferFunction(model), omega).magnitude < 1.0;
}

StabilityConstraint stability_constraint(const ErrorModel& model) noexcept {
  // |b0 + i b1 w|^2 < |a0 - w^2 + i a1 w|^2, expanded in u = w^2.
  return {model.a1 * model.a1 - model.b1 * model.b1 - 2.0 * model.a0,
          model.a0 * model.a0 - model.b0 * model.b0};
}

std::vector<double> critical_frequencies(const StabilityConstraint& q) {
  std::vector<double> roots;
  const double disc = q.alpha * q.alpha - 4.0 * q.beta;
  if (!(disc >= 0)) return roots;
  // q_root carries the larger-magnitude root; the other follows from
  // Vieta's product without cancellation.
  const double sq = std::sqrt(disc);
  const double q_root = -0.5 * (q.alpha + std::copysign(sq, q.alpha));
  std::vector<double> us;
  if (q_root != 0.0) {
    us.push_back(q_root);
    us.push_back(q.beta / q_root);
  } else {
    us.push_back(0.0);
  }
  for (double u : us) {
    if (u > 0) roots.push_back(std::sqrt(u));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<FrequencyBand> stability_bands(const StabilityConstraint& q) {
  const auto crit = critical_frequencies(q);
  std::vector<FrequencyBand> bands;
  double lo = 0.0;
  auto classify = [&](double a, double b) {
    const double probe = std::isinf(b) ? (a > 0 ? 2.0 * a : 1.0) : 0.5 * (a + b);
    return q.quadratic(probe * probe) > 0;
  };
  for (double w : crit) {
    bands.push_back({lo, w, classify(lo, w)});
    lo = w;
  }
  const double inf = std::numeric_limits<double>::infinity();
  bands.push_back({lo, inf, classify(lo, inf)});
  return bands;
}

std::vector<double> frequency_grid(double omega_min, double omega_max, std::size_t points,
                                   GridSpacing spacing) {
  if (!(omega_min > 0) || !std::isfinite(omega_max) || !(omega_max > omega_min)) {
    throw ValidationError("frequency range must satisfy 0 < omega_min < omega_max");
  }
  if (points < 2) throw ValidationError("frequency grid needs at least 2 points");
  std::vector<double> grid(points);
  const double last = static_cast<double>(points - 1);
  if (spacing == GridSpacing::Logarithmic) {
    const double l0 = std::log(omega_min), l1 = std::log(omega_max);
    for (std::size_t i = 0; i < points; ++i) grid[i] = std::exp(l0 + (l1 - l0) * (static_cast<double>(i) / last));
  } else {
    for (std::size_t i = 0; i < points; ++i)
      grid[i] = omega_min + (omega_max - omega_min) * (static_cast<double>(i) / last);
  }
  grid.front() = omega_min;
  grid.back() = omega_max;
  return grid;
}

std::vector<FrequencyResponse> sweep(const TransferFunction& tf, const std::vector<double>& grid) {
  std::vector<FrequencyResponse> out;
  out.reserve(grid.size());
  for (double w : grid) out.push_back(frequency_response(tf, w));
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<FrequencyResponse>& rows) {
  std::string buf = "omega,re,im,magnitude,stable\n";
  for (const auto& r : rows) {
    append_double(buf, r.omega);
    buf += ',';
    append_double(buf, r.value.real());
    buf += ',';
    append_double(buf, r.value.imag());
    buf += ',';
    append_double(buf, r.magnitude);
    buf += (r.omega > 0 && r.magnitude < 1.0) ? ",true\n" : ",false\n";
  }
  out << buf;
}

}  // namespace platoon
