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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "platoon/model.hpp"

namespace platoon {

/// One logged controller sample: the full parameter tuple and the
/// disturbance frequency observed with it.
struct Event {
  std::size_t index = 0;
  ControllerSpec spec;
  double omega = 0.0;  ///< [rad/s]

  friend bool operator==(const Event&, const Event&) = default;
};

struct Trace {
  std::vector<Event> events;
  std::string source;  ///< file path or "seed=<n>"
};

enum class Predicate { P1, P2 };
enum class Outcome { Pass, Fail };

std::string_view to_string(Predicate p) noexcept;
std::string_view to_string(Outcome o) noexcept;

struct Violation {
  std::size_t index = 0;
  Predicate predicate = Predicate::P1;
  std::string reason;
};

struct Verdict {
  Outcome outcome = Outcome::Pass;
  std::optional<Violation> first_violation;
  std::size_t events = 0;
  std::size_t p1_failures = 0;
  std::size_t p2_failures = 0;
  double seconds = 0.0;
};

/// P1: the event's parameters form a valid platoon.
bool check_p1(const Event& e) noexcept;

/// P2: 0 < w and the stability constraint of the event's model holds at w.
/// uni_cs uses the literal bound 2k/m < w^2; every other model uses
/// Q(w^2) > 0. Parameters are not validated here, and a triple without a
/// model fails.
bool check_p2(const Event& e) noexcept;

/// Human-readable cause of a failed predicate on `e`.
std::string explain_failure(const Event& e, Predicate p);

/// Single-pass evaluation of Globally(P1 and P2). Feed events in trace
/// order; the fold never short-circuits so the counters cover every event.
class MonitorFold {
 public:
  void observe(const Event& e);
  /// Verdict without timing (seconds = 0).
  Verdict result() const;

 private:
  std::size_t events_ = 0;
  std::size_t p1_failures_ = 0;
  std::size_t p2_failures_ = 0;
  std::optional<Violation> first_;
};

/// Folds every event and records wall-clock time.
Verdict run_monitor(std::span<const Event> events);
Verdict run_monitor(const Trace& trace);

/// Combines verdicts of consecutive trace partitions: counters add, the
/// earliest violation wins.
Verdict merge_verdicts(const Verdict& a, const Verdict& b);

struct PlannedViolation {
  std::size_t index = 0;
  Predicate kind = Predicate::P1;
};

struct GeneratorOptions {
  double jitter = 0.1;  ///< relative half-width of parameter jitter
  int significant_digits = 9;  ///< generated values are rounded to this many digits
};

/// Deterministic pseudo-random trace around `templ`. Every event satisfies
/// P1 and P2 except at planned indices, where the named predicate fails:
/// P1 by zeroing one positive parameter, P2 by an unstable or nonpositive w.
/// Throws ValidationError for an invalid template or an out-of-range plan.
Trace generate_trace(std::uint64_t seed, std::size_t length, const ControllerSpec& templ,
                     std::span<const PlannedViolation> plan, const GeneratorOptions& options = {});

/// "500:P2" -> {500, P2}. Throws ValidationError.
PlannedViolation parse_planned_violation(std::string_view text);

}  // namespace platoon
