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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <random>
#include <string>

#include "platoon/error.hpp"
#include "platoon/frequency.hpp"
#include "platoon/monitor.hpp"

namespace platoon {

namespace {

constexpr int kMaxAttempts = 64;

// mt19937_64 output is fixed by the standard; the distributions are not, so
// the mapping to [0, 1) is done by hand to keep traces reproducible across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(uniform() * static_cast<double>(bound)); }

 private:
  std::mt19937_64 engine_;
};

double round_digits(double value, int digits) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
  double out = value;
  std::from_chars(buf, res.ptr, out);
  return out;
}

std::array<double*, 9> real_fields(PlatoonParams& p) {
  return {&p.m, &p.k, &p.c, &p.h, &p.ch, &p.vd, &p.h0, &p.ca, &p.cd};
}

double sample_in_band(Rng& rng, const FrequencyBand& band) {
  if (std::isinf(band.hi)) {
    const double base = band.lo > 0 ? band.lo : 1.0;
    return base * (1.01 + 2.0 * rng.uniform());
  }
  return band.lo + (0.01 + 0.98 * rng.uniform()) * (band.hi - band.lo);
}

std::vector<FrequencyBand> bands_of(const Event& e, bool stable) {
  const auto kind = model_kind(e.spec);
  std::vector<FrequencyBand> out;
  for (const auto& b : stability_bands(stability_constraint(model_coefficients(*kind, e.spec.params)))) {
    if (b.stable == stable) out.push_back(b);
  }
  return out;
}

void draw_stable_omega(Rng& rng, Event& e, int digits) {
  const auto bands = bands_of(e, true);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    e.omega = round_digits(sample_in_band(rng, bands[rng.below(bands.size())]), digits);
    if (check_p2(e)) return;
  }
  // Far above every critical frequency Q is positive.
  e.omega = round_digits(10.0 * (bands.back().lo + 1.0), digits);
}

void draw_unstable_omega(Rng& rng, Event& e, int digits) {
  const auto bands = bands_of(e, false);
  if (bands.empty() || rng.uniform() < 0.25) {
    e.omega = rng.uniform() < 0.5 ? 0.0 : -round_digits(0.1 + 10.0 * rng.uniform(), digits);
    return;
  }
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    e.omega = round_digits(sample_in_band(rng, bands[rng.below(bands.size())]), digits);
    if (!check_p2(e)) return;
  }
  e.omega = 0.0;
}

}  // namespace

Trace generate_trace(std::uint64_t seed, std::size_t length, const ControllerSpec& templ,
                     std::span<const PlannedViolation> plan, const GeneratorOptions& options) {
  require_valid_platoon(templ.params);
  if (!model_kind(templ)) throw ValidationError("template controller has no spacing-error model");
  if (!(options.jitter >= 0.0 && options.jitter < 1.0)) throw ValidationError("jitter must lie in [0, 1)");
  if (options.significant_digits < 1 || options.significant_digits > 17) {
    throw ValidationError("significant digits must lie in [1, 17]");
  }
  for (const auto& v : plan) {
    if (v.index >= length) {
      throw ValidationError("violation index " + std::to_string(v.index) + " out of range for trace of length " +
                            std::to_string(length));
    }
  }

  std::vector<PlannedViolation> sorted(plan.begin(), plan.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.index < b.index; });

  Rng rng(seed);
  const int digits = options.significant_digits;
  Trace trace;
  trace.source = "seed=" + std::to_string(seed);
  trace.events.reserve(length);
  auto next_plan = sorted.begin();

  for (std::size_t i = 0; i < length; ++i) {
    Event e;
    e.index = i;
    e.spec = templ;
    for (double* field : real_fields(e.spec.params)) {
      *field = round_digits(*field * (1.0 + options.jitter * (2.0 * rng.uniform() - 1.0)), digits);
    }
    draw_stable_omega(rng, e, digits);

    bool break_p1 = false, break_p2 = false;
    for (; next_plan != sorted.end() && next_plan->index == i; ++next_plan) {
      (next_plan->kind == Predicate::P1 ? break_p1 : break_p2) = true;
    }
    if (break_p2) draw_unstable_omega(rng, e, digits);
    if (break_p1) *real_fields(e.spec.params)[rng.below(9)] = 0.0;
    trace.events.push_back(e);
  }
  return trace;
}

PlannedViolation parse_planned_violation(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ValidationError("violation must look like <index>:P1|P2");
  PlannedViolation v;
  const auto idx = text.substr(0, colon);
  auto res = std::from_chars(idx.data(), idx.data() + idx.size(), v.index);
  if (res.ec != std::errc() || res.ptr != idx.data() + idx.size()) {
    throw ValidationError("bad violation index '" + std::string(idx) + "'");
  }
  const auto kind = text.substr(colon + 1);
  if (kind == "P1") {
    v.kind = Predicate::P1;
  } else if (kind == "P2") {
    v.kind = Predicate::P2;
  } else {
    throw ValidationError("bad violation predicate '" + std::string(kind) + "'");
  }
  return v;
}

}  // namespace platoon
