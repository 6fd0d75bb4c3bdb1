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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "platoon/error.hpp"
#include "platoon/frequency.hpp"
#include "platoon/monitor.hpp"

using namespace platoon;

namespace {

const PlatoonParams kRef{10, 1000, 2000, 400, 1, 1, 25, 1, 50, 50};

ControllerSpec uni_cs() {
  return {ControllerType::Autonomous, Configuration::Unidirectional, Strategy::ConstantSpacing, kRef};
}

Event event(double omega, ControllerSpec spec = uni_cs(), std::size_t index = 0) { return {index, spec, omega}; }

// Reference semantics: ALL P1 and ALL P2 over the list, first failing index
// found by a plain scan.
struct NaiveVerdict {
  bool pass = true;
  std::size_t first = 0;
  Predicate predicate = Predicate::P1;
  std::size_t p1 = 0, p2 = 0;
};

NaiveVerdict naive_fold(const std::vector<Event>& events) {
  NaiveVerdict v;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const bool p1 = check_p1(events[i]);
    const bool p2 = check_p2(events[i]);
    v.p1 += !p1;
    v.p2 += !p2;
    if (v.pass && !(p1 && p2)) {
      v.pass = false;
      v.first = i;
      v.predicate = p1 ? Predicate::P2 : Predicate::P1;
    }
  }
  return v;
}

}  // namespace

TEST_CASE("P1 is platoon validity") {
  CHECK(check_p1(event(3)));
  auto spec = uni_cs();
  spec.params.ca = 0;
  CHECK_FALSE(check_p1(event(3, spec)));
  CHECK(explain_failure(event(3, spec), Predicate::P1) == "0 < ca violated");
  spec = uni_cs();
  spec.params.n = 2;
  CHECK(check_p1(event(3, spec)));
}

TEST_CASE("P2 for uni_cs is 0 < w and 2k/m < w^2") {
  CHECK(check_p2(event(3)));
  CHECK_FALSE(check_p2(event(2)));
  CHECK_FALSE(check_p2(event(-1)));
  CHECK_FALSE(check_p2(event(0)));
  CHECK(explain_failure(event(2), Predicate::P2) == "2k/m < ω² violated (2k/m = 4, ω² = 4)");
  CHECK(explain_failure(event(-1), Predicate::P2) == "0 < ω violated (ω = -1)");
}

TEST_CASE("P2 generalizes through the Q-form") {
  auto bi = uni_cs();
  bi.configuration = Configuration::Bidirectional;
  // Stable below 1.5159 and above 2.2852 rad/s.
  CHECK(check_p2(event(1.0, bi)));
  CHECK_FALSE(check_p2(event(2.0, bi)));
  CHECK(check_p2(event(3.0, bi)));
  CHECK(explain_failure(event(2.0, bi), Predicate::P2).rfind("generalized constraint", 0) == 0);

  auto unsupported = bi;
  unsupported.strategy = Strategy::VarTimeHeadway;
  CHECK_FALSE(check_p2(event(3.0, unsupported)));

  // Invalid parameters are still evaluated; NaN coefficients fail.
  auto massless = uni_cs();
  massless.params.m = 0;
  CHECK_FALSE(check_p2(event(3.0, massless)));
}

TEST_CASE("P2 agrees with the frequency-domain decision") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> w(0.05, 6.0);
  for (auto cf : {Configuration::Unidirectional, Configuration::Bidirectional}) {
    for (auto st : {Strategy::ConstantSpacing, Strategy::VariableSpacing}) {
      ControllerSpec spec{ControllerType::Autonomous, cf, st, kRef};
      for (int i = 0; i < 200; ++i) {
        const double omega = w(rng);
        CHECK(check_p2(event(omega, spec)) == is_stable_at(error_model(spec), omega));
      }
    }
  }
}

TEST_CASE("run_monitor verdicts") {
  SUBCASE("empty trace passes vacuously") {
    const auto v = run_monitor(std::span<const Event>());
    CHECK(v.outcome == Outcome::Pass);
    CHECK(v.events == 0);
    CHECK_FALSE(v.first_violation.has_value());
  }
  SUBCASE("P1 is reported before P2 on the same event and the scan is complete") {
    std::vector<Event> events;
    for (std::size_t i = 0; i < 10; ++i) events.push_back(event(3, uni_cs(), i));
    events[4].omega = 1;
    events[6].spec.params.m = 0;
    events[6].omega = -1;
    events[2].spec.params.k = -5;
    const auto v = run_monitor(events);
    CHECK(v.outcome == Outcome::Fail);
    REQUIRE(v.first_violation);
    CHECK(v.first_violation->index == 2);
    CHECK(v.first_violation->predicate == Predicate::P1);
    CHECK(v.first_violation->reason == "0 < k violated");
    CHECK(v.events == 10);
    CHECK(v.p1_failures == 2);
    CHECK(v.p2_failures == 2);  // k < 0 still satisfies 2k/m < w^2
  }
}

TEST_CASE("generator closed loop") {
  const auto clean = generate_trace(42, 1000, uni_cs(), {});
  CHECK(clean.events.size() == 1000);
  CHECK(run_monitor(clean).outcome == Outcome::Pass);
  CHECK(generate_trace(42, 0, uni_cs(), {}).events.empty());

  const PlannedViolation at500[] = {{500, Predicate::P2}};
  const auto v = run_monitor(generate_trace(7, 1000, uni_cs(), at500));
  CHECK(v.outcome == Outcome::Fail);
  CHECK(v.first_violation->index == 500);
  CHECK(v.first_violation->predicate == Predicate::P2);
  CHECK(v.p2_failures == 1);
  CHECK(v.p1_failures == 0);

  // Same seed, same trace.
  CHECK(generate_trace(9, 50, uni_cs(), {}).events == generate_trace(9, 50, uni_cs(), {}).events);
  CHECK(generate_trace(9, 50, uni_cs(), {}).events != generate_trace(10, 50, uni_cs(), {}).events);
}

TEST_CASE("generator errors") {
  const PlannedViolation out_of_range[] = {{10, Predicate::P1}};
  CHECK_THROWS_AS(generate_trace(1, 10, uni_cs(), out_of_range), ValidationError);
  auto bad = uni_cs();
  bad.params.n = 1;
  CHECK_THROWS_AS(generate_trace(1, 10, bad, {}), InvalidPlatoonError);
  auto unsupported = uni_cs();
  unsupported.configuration = Configuration::Bidirectional;
  unsupported.strategy = Strategy::VarTimeHeadway;
  CHECK_THROWS_AS(generate_trace(1, 10, unsupported, {}), ValidationError);
}

TEST_CASE("violation localization over random plans and models") {
  std::mt19937_64 rng(99);
  const ControllerSpec templates[] = {
      uni_cs(),
      {ControllerType::Autonomous, Configuration::Unidirectional, Strategy::VariableSpacing, kRef},
      {ControllerType::Autonomous, Configuration::Unidirectional, Strategy::VarTimeHeadway, kRef},
      {ControllerType::Autonomous, Configuration::Bidirectional, Strategy::ConstantSpacing, kRef},
      {ControllerType::Autonomous, Configuration::Bidirectional, Strategy::VariableSpacing, kRef},
      {ControllerType::NonAutonomous, Configuration::Bidirectional, Strategy::VarTimeHeadway, kRef},
  };
  for (int trial = 0; trial < 60; ++trial) {
    const auto& templ = templates[static_cast<std::size_t>(trial) % 6];
    const std::size_t length = 1 + rng() % 2000;
    std::vector<PlannedViolation> plan;
    const std::size_t count = rng() % 4;
    for (std::size_t j = 0; j < count; ++j) {
      plan.push_back({rng() % length, rng() % 2 ? Predicate::P1 : Predicate::P2});
    }
    const auto trace = generate_trace(rng(), length, templ, plan);
    const auto v = run_monitor(trace);
    const auto naive = naive_fold(trace.events);
    CHECK(v.p1_failures == naive.p1);
    CHECK(v.p2_failures == naive.p2);
    if (plan.empty()) {
      CHECK(v.outcome == Outcome::Pass);
      continue;
    }
    const auto first = std::min_element(plan.begin(), plan.end(), [](auto& a, auto& b) {
      return a.index < b.index || (a.index == b.index && a.kind < b.kind);
    });
    REQUIRE(v.first_violation);
    CHECK(v.first_violation->index == first->index);
    CHECK(v.first_violation->predicate == first->kind);
    CHECK(naive.first == first->index);
  }
}

TEST_CASE("verdicts merge across partitions") {
  const PlannedViolation plan[] = {{30, Predicate::P2}, {70, Predicate::P1}};
  const auto trace = generate_trace(5, 100, uni_cs(), plan);
  const std::span<const Event> all(trace.events);
  const auto whole = run_monitor(all);
  for (std::size_t cut : {0u, 20u, 50u, 99u}) {
    const auto merged = merge_verdicts(run_monitor(all.first(cut)), run_monitor(all.subspan(cut)));
    CHECK(merged.outcome == whole.outcome);
    CHECK(merged.first_violation->index == whole.first_violation->index);
    CHECK(merged.first_violation->predicate == whole.first_violation->predicate);
    CHECK(merged.p1_failures == whole.p1_failures);
    CHECK(merged.p2_failures == whole.p2_failures);
    CHECK(merged.events == 100);
  }
}

TEST_CASE("appending events never turns a failure into a pass") {
  const PlannedViolation plan[] = {{10, Predicate::P1}};
  auto trace = generate_trace(8, 20, uni_cs(), plan);
  const auto tail = generate_trace(9, 50, uni_cs(), {});
  for (const auto& e : tail.events) {
    trace.events.push_back(e);
    trace.events.back().index = trace.events.size() - 1;
    const auto v = run_monitor(trace);
    CHECK(v.outcome == Outcome::Fail);
    CHECK(v.first_violation->index == 10);
  }
}

TEST_CASE("violation plan parsing") {
  const auto v = parse_planned_violation("500:P2");
  CHECK(v.index == 500);
  CHECK(v.kind == Predicate::P2);
  CHECK(parse_planned_violation("0:P1").kind == Predicate::P1);
  CHECK_THROWS_AS(parse_planned_violation("500"), ValidationError);
  CHECK_THROWS_AS(parse_planned_violation("x:P1"), ValidationError);
  CHECK_THROWS_AS(parse_planned_violation("5:P3"), ValidationError);
}
