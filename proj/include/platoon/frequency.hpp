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

#include <complex>
#include <iosfwd>
#include <vector>

#include "platoon/model.hpp"

namespace platoon {

/// H(s) = (b1 s + b0) / (s^2 + a1 s + a0): ratio of adjacent spacing errors
/// in the Laplace domain. Identical vehicles make H index-independent.
class TransferFunction {
 public:
  explicit TransferFunction(const ErrorModel& model) noexcept : model_(model) {}

  std::complex<double> numerator(std::complex<double> s) const noexcept {
    return model_.b1 * s + model_.b0;
  }
  std::complex<double> denominator(std::complex<double> s) const noexcept {
    return s * s + model_.a1 * s + model_.a0;
  }

  /// H(s). Throws SingularityError when |denominator(s)| < 1e-300.
  std::complex<double> operator()(std::complex<double> s) const;

  /// b0 / a0
  double dc_gain() const noexcept { return model_.b0 / model_.a0; }

  const ErrorModel& model() const noexcept { return model_; }

 private:
  ErrorModel model_;
};

struct FrequencyResponse {
  double omega = 0.0;  ///< [rad/s]
  std::complex<double> value;
  double magnitude = 0.0;
};

/// Q(w^2) = w^4 + alpha w^2 + beta. For w > 0 away from the poles,
/// |H(iw)| < 1 exactly when Q(w^2) > 0.
struct StabilityConstraint {
  double alpha = 0.0;  ///< a1^2 - b1^2 - 2 a0 [1/s^2]
  double beta = 0.0;   ///< a0^2 - b0^2 [1/s^4]

  /// Q evaluated at u = w^2.
  double quadratic(double u) const noexcept { return (u + alpha) * u + beta; }
  /// Q(w^2) > 0 and w > 0.
  bool holds(double omega) const noexcept { return omega > 0 && quadratic(omega * omega) > 0; }
};

/// Open interval (lo, hi) of positive frequencies with a uniform verdict.
/// The last band has hi = +infinity.
struct FrequencyBand {
  double lo = 0.0;
  double hi = 0.0;
  bool stable = false;
};

TransferFunction transfer_function(const ErrorModel& model) noexcept;

/// H(iw) and its modulus. Throws SingularityError if the denominator vanishes,
/// ValidationError if omega is not finite.
FrequencyResponse frequency_response(const TransferFunction& tf, double omega);

/// |H(iw)| < 1, compared without tolerance. Throws ValidationError unless
/// omega > 0.
bool is_stable_at(const ErrorModel& model, double omega);

StabilityConstraint stability_constraint(const ErrorModel& model) noexcept;

/// Positive w with Q(w^2) = 0, ascending, duplicates removed.
std::vector<double> critical_frequencies(const StabilityConstraint& constraint);

/// Splits (0, inf) at the critical frequencies. Adjacent bands alternate
/// unless a double root merely touches zero.
std::vector<FrequencyBand> stability_bands(const StabilityConstraint& constraint);

enum class GridSpacing { Linear, Logarithmic };

/// `points` frequencies from omega_min to omega_max inclusive. Requires
/// 0 < omega_min < omega_max and points >= 2 (ValidationError otherwise).
std::vector<double> frequency_grid(double omega_min, double omega_max, std::size_t points,
                                   GridSpacing spacing);

/// Frequency response on every grid point, in grid order.
std::vector<FrequencyResponse> sweep(const TransferFunction& tf, const std::vector<double>& grid);

/// `omega,re,im,magnitude,stable` header plus one row per response.
void write_sweep_csv(std::ostream& out, const std::vector<FrequencyResponse>& rows);

}  // namespace platoon
