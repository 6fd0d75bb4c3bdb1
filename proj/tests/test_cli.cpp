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

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "platoon/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "platoon-stab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = platoon::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("platoon-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(file(name), std::ios::binary) << content;
    return file(name);
  }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string spec_doc(const std::string& ct, const std::string& cf, const std::string& st, double h = 1) {
  json j;
  j["controller_type"] = ct;
  j["configuration"] = cf;
  j["strategy"] = st;
  j["params"] = {{"n", 10}, {"m", 1000}, {"k", 2000}, {"c", 400}, {"h", h},
                 {"ch", 1}, {"vd", 25},  {"h0", 1},   {"ca", 50}, {"cd", 50}};
  return j.dump();
}

const std::string kUniCs = spec_doc("autonomous", "unidirectional", "constant_spacing");

}  // namespace

TEST_CASE("analyze") {
  TempDir dir;
  SUBCASE("uni_cs reports the closed-form threshold") {
    const auto r = run({"analyze", "--spec", dir.write("s.json", kUniCs)});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["model"] == "uni_cs");
    CHECK(j["threshold"] == 2.0);
    CHECK(j["stability_constraint"]["generalized"] == false);
    CHECK(j["critical_frequencies"] == json::array({2.0}));
    CHECK(j["error_model"]["a0"] == 2.0);
    CHECK(j["error_model"]["a1"] == 0.4);
    CHECK(j["bands"].back()["hi"].is_null());
    CHECK(j["condition"].get<std::string>().find("2k/m = 4") != std::string::npos);
    CHECK_FALSE(j.contains("note"));
  }
  SUBCASE("non-autonomous specs note the clcv mapping") {
    const auto r = run({"analyze", "--spec", dir.write("s.json", spec_doc("non_autonomous", "bidirectional", "var_time_headway"))});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["model"] == "clcv");
    CHECK(j.contains("note"));
    CHECK(j["stability_constraint"]["generalized"] == true);
  }
  SUBCASE("invalid platoon names the failed conjunct") {
    const auto r = run({"analyze", "--spec", dir.write("s.json", spec_doc("autonomous", "unidirectional", "constant_spacing", 0))});
    CHECK(r.code == 2);
    CHECK(r.err.find("0 < h violated") != std::string::npos);
  }
  SUBCASE("unsupported triple") {
    const auto r = run({"analyze", "--spec", dir.write("s.json", spec_doc("autonomous", "bidirectional", "var_time_headway"))});
    CHECK(r.code == 2);
  }
  SUBCASE("missing and malformed spec files") {
    CHECK(run({"analyze", "--spec", dir.file("absent.json")}).code == 1);
    CHECK(run({"analyze", "--spec", dir.write("bad.json", "{")}).code == 2);
    CHECK(run({"analyze"}).code == 2);
  }
}

TEST_CASE("sweep") {
  TempDir dir;
  const auto spec = dir.write("s.json", kUniCs);
  const auto r = run({"sweep", "--spec", spec, "--points", "50"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("omega,re,im,magnitude,stable\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 51);
  const auto summary = json::parse(r.err);
  CHECK(summary["points"] == 50);
  CHECK(summary["model"] == "uni_cs");

  CHECK(run({"sweep", "--spec", spec, "--points", "50"}).out == r.out);

  const auto file = dir.file("sweep.csv");
  REQUIRE(run({"sweep", "--spec", spec, "--points", "50", "--out", file}).code == 0);
  CHECK(slurp(file) == r.out);

  CHECK(run({"sweep", "--spec", spec, "--omega-min", "5", "--omega-max", "1"}).code == 2);
  CHECK(run({"sweep", "--spec", spec, "--omega-min", "0"}).code == 2);
  CHECK(run({"sweep", "--spec", spec, "--points", "1"}).code == 2);
  CHECK(run({"sweep", "--spec", spec, "--spacing", "cubic"}).code == 2);
}

TEST_CASE("simulate") {
  TempDir dir;
  const auto spec = dir.write("s.json", kUniCs);
  SUBCASE("stable frequency attenuates") {
    const auto r = run({"simulate", "--spec", spec, "--n", "4", "--omega", "3", "--duration", "100"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("t,z_1,z_2,z_3,z_4\n", 0) == 0);
    const auto report = json::parse(r.err);
    CHECK(report["attenuates"] == true);
    for (double ratio : report["ratios"]) CHECK(ratio < 1.0);
  }
  SUBCASE("unstable frequency amplifies") {
    const auto report_path = dir.file("report.json");
    const auto r = run({"simulate", "--spec", spec, "--n", "4", "--omega", "1", "--duration", "100", "--report", report_path});
    REQUIRE(r.code == 0);
    const auto report = json::parse(slurp(report_path));
    CHECK(report["attenuates"] == false);
    for (double ratio : report["ratios"]) CHECK(ratio > 1.0);
  }
  SUBCASE("state-space mode") {
    const auto r = run({"simulate", "--spec", spec, "--n", "3", "--omega", "3", "--duration", "60", "--amp", "1000",
                        "--state-space"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("t,x_1,v_1,x_2,v_2,x_3,v_3\n", 0) == 0);
    CHECK(json::parse(r.err)["mode"] == "state_space");
  }
  SUBCASE("failures") {
    CHECK(run({"simulate", "--spec", spec, "--omega", "3", "--amp", "0", "--duration", "10"}).code == 2);
    CHECK(run({"simulate", "--spec", spec, "--omega", "0.1", "--dt", "50", "--duration", "5000"}).code == 3);
    CHECK(run({"simulate", "--spec", spec, "--omega", "-1"}).code == 2);
    CHECK(run({"simulate", "--spec", spec, "--omega", "3", "--dt", "fast"}).code == 2);
    CHECK(run({"simulate", "--spec", spec}).code == 2);
    const auto bi = dir.write("bi.json", spec_doc("autonomous", "bidirectional", "constant_spacing"));
    CHECK(run({"simulate", "--spec", bi, "--omega", "3", "--state-space", "--duration", "10"}).code == 2);
  }
}

TEST_CASE("gen-trace and monitor") {
  TempDir dir;
  const auto spec = dir.write("s.json", kUniCs);

  const auto a = run({"gen-trace", "--seed", "42", "--len", "1000", "--spec", spec});
  const auto b = run({"gen-trace", "--seed", "42", "--len", "1000", "--spec", spec});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 1000);

  const auto clean = dir.write("clean.jsonl", a.out);
  const auto pass = run({"monitor", "--trace", clean});
  CHECK(pass.code == 0);
  const auto verdict = json::parse(pass.out);
  CHECK(verdict["outcome"] == "pass");
  CHECK(verdict["events"] == 1000);
  CHECK(verdict["first_violation"].is_null());

  const auto bad = dir.file("bad.jsonl");
  REQUIRE(run({"gen-trace", "--seed", "7", "--len", "1000", "--spec", spec, "--violate", "500:P2,800:P1", "--out", bad})
              .code == 0);
  const auto fail = run({"monitor", "--trace", bad});
  CHECK(fail.code == 4);
  const auto fv = json::parse(fail.out);
  CHECK(fv["outcome"] == "fail");
  CHECK(fv["first_violation"]["index"] == 500);
  CHECK(fv["first_violation"]["predicate"] == "P2");
  CHECK(fv["p1_failures"] == 1);
  CHECK(fv["p2_failures"] == 1);

  // Cut the third line short.
  std::string text = a.out;
  std::size_t third = 0;
  for (int i = 0; i < 2; ++i) third = text.find('\n', third) + 1;
  text.erase(third + 20, text.find('\n', third) - third - 20);
  const auto truncated = run({"monitor", "--trace", dir.write("trunc.jsonl", text)});
  CHECK(truncated.code == 2);
  CHECK(truncated.err.find("line 3") != std::string::npos);

  CHECK(run({"monitor", "--trace", dir.file("absent.jsonl")}).code == 1);
  CHECK(run({"monitor", "--trace", dir.write("empty.jsonl", "")}).code == 0);

  CHECK(run({"gen-trace", "--seed", "1", "--len", "10", "--spec", spec, "--violate", "10:P1"}).code == 2);
  CHECK(run({"gen-trace", "--seed", "1", "--len", "10", "--spec", spec, "--violate", "3:P9"}).code == 2);
  CHECK(run({"gen-trace", "--seed", "1", "--len", "10", "--spec", spec, "--jitter", "1.5"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("executable exit status") {
  TempDir dir;
  const auto spec = dir.write("s.json", kUniCs);
  const auto trace = dir.file("t.jsonl");
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  const std::string exe = PLATOON_STAB_EXE;
  CHECK(status(exe + " gen-trace --seed 3 --len 100 --spec " + spec + " --violate 42:P1 --out " + trace) == 0);
  CHECK(status(exe + " monitor --trace " + trace) == 4);
  CHECK(status(exe + " analyze --spec " + spec) == 0);
  CHECK(status(exe + " monitor --trace " + dir.file("absent")) == 1);
}
