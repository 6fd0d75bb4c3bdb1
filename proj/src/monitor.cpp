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

#include "platoon/monitor.hpp"

#include <chrono>

#include "platoon/frequency.hpp"
#include "platoon/numfmt.hpp"

namespace platoon {

std::string_view to_string(Predicate p) noexcept { return p == Predicate::P1 ? "P1" : "P2"; }

std::string_view to_string(Outcome o) noexcept { return o == Outcome::Pass ? "pass" : "fail"; }

bool check_p1(const Event& e) noexcept { return is_valid_platoon(e.spec.params); }

bool check_p2(const Event& e) noexcept {
  const auto kind = model_kind(e.spec);
  if (!kind || !(e.omega > 0)) return false;
  const auto& p = e.spec.params;
  if (*kind == ModelKind::UniCs) return 2 * p.k / p.m < e.omega * e.omega;
  return stability_constraint(model_coefficients(*kind, p)).holds(e.omega);
}

std::string explain_failure(const Event& e, Predicate predicate) {
  if (predicate == Predicate::P1) {
    const auto conjunct = failed_conjunct(e.spec.params);
    return conjunct ? std::string(*conjunct) + " violated" : "platoon is valid";
  }
  const auto kind = model_kind(e.spec);
  if (!kind) {
    return "no stability model for " + std::string(to_string(e.spec.configuration)) + " " +
           std::string(to_string(e.spec.strategy));
  }
  if (!(e.omega > 0)) return "0 < ω violated (ω = " + format_double(e.omega) + ")";
  const auto& p = e.spec.params;
  if (*kind == ModelKind::UniCs) {
    return "2k/m < ω² violated (2k/m = " + format_double(2 * p.k / p.m) +
           ", ω² = " + format_double(e.omega * e.omega) + ")";
  }
  const auto q = stability_constraint(model_coefficients(*kind, p));
  return "generalized constraint Q(ω²) > 0 violated for " + std::string(model_name(*kind)) +
         " (Q = " + format_double(q.quadratic(e.omega * e.omega)) + ", ω = " + format_double(e.omega) + ")";
}

void MonitorFold::observe(const Event& e) {
  const bool p1 = check_p1(e);
  const bool p2 = check_p2(e);
  ++events_;
  p1_failures_ += p1 ? 0 : 1;
  p2_failures_ += p2 ? 0 : 1;
  if (!first_ && !(p1 && p2)) {
    const Predicate failed = p1 ? Predicate::P2 : Predicate::P1;
    first_ = Violation{e.index, failed, explain_failure(e, failed)};
  }
}

Verdict MonitorFold::result() const {
  Verdict v;
  v.outcome = first_ ? Outcome::Fail : Outcome::Pass;
  v.first_violation = first_;
  v.events = events_;
  v.p1_failures = p1_failures_;
  v.p2_failures = p2_failures_;
  return v;
}

Verdict run_monitor(std::span<const Event> events) {
  const auto start = std::chrono::steady_clock::now();
  MonitorFold fold;
  for (const auto& e : events) fold.observe(e);
  Verdict v = fold.result();
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return v;
}

Verdict run_monitor(const Trace& trace) { return run_monitor(std::span<const Event>(trace.events)); }

Verdict merge_verdicts(const Verdict& a, const Verdict& b) {
  Verdict v;
  v.events = a.events + b.events;
  v.p1_failures = a.p1_failures + b.p1_failures;
  v.p2_failures = a.p2_failures + b.p2_failures;
  v.seconds = a.seconds + b.seconds;
  if (a.first_violation && b.first_violation) {
    v.first_violation =
        a.first_violation->index <= b.first_violation->index ? a.first_violation : b.first_violation;
  } else {
    v.first_violation = a.first_violation ? a.first_violation : b.first_violation;
  }
  v.outcome = v.first_violation ? Outcome::Fail : Outcome::Pass;
  return v;
}

}  // namespace platoon
