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

#include "platoon/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "platoon/error.hpp"
#include "platoon/frequency.hpp"
#include "platoon/model.hpp"
#include "platoon/monitor.hpp"
#include "platoon/numfmt.hpp"
#include "platoon/simulation.hpp"
#include "platoon/spec_io.hpp"
#include "platoon/trace_io.hpp"

namespace platoon::cli {

namespace {

using nlohmann::ordered_json;

/// stdout-or-file destination.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw IoError("cannot open " + path + " for writing");
      stream_ = file_.get();
    }
  }

  std::ostream& stream() { return *stream_; }

  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed" + (path_.empty() ? std::string() : " for " + path_));
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

ordered_json json_number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string term(double coefficient, const char* symbol) {
  return format_double(coefficient) + (*symbol ? std::string(" ") + symbol : std::string());
}

std::string describe_bands(const std::vector<FrequencyBand>& bands) {
  std::string out;
  for (const auto& b : bands) {
    if (!b.stable) continue;
    if (!out.empty()) out += " ∪ ";
    out += "(" + format_double(b.lo) + ", " + (std::isinf(b.hi) ? std::string("∞") : format_double(b.hi)) + ")";
  }
  return out.empty() ? "∅" : out;
}

struct Analysis {
  ModelKind kind;
  ErrorModel model;
  StabilityConstraint constraint;
  std::vector<double> critical;
  std::vector<FrequencyBand> bands;
};

Analysis analyze_spec(const ControllerSpec& spec) {
  Analysis a;
  a.model = error_model(spec);
  a.kind = *model_kind(spec);
  a.constraint = stability_constraint(a.model);
  a.critical = critical_frequencies(a.constraint);
  a.bands = stability_bands(a.constraint);
  return a;
}

int cmd_analyze(const std::string& spec_path, std::ostream& out) {
  const auto spec = read_controller_spec(spec_path);
  const auto a = analyze_spec(spec);
  const auto& m = a.model;
  const auto tf = transfer_function(m);

  ordered_json j;
  j["controller"] = ordered_json::parse(controller_spec_to_json(spec));
  j["model"] = model_name(a.kind);
  if (a.kind == ModelKind::Clcv) {
    j["note"] =
        "non-autonomous controller: leader-current-velocity (clcv) model selected; configuration and "
        "strategy do not affect the dynamics";
  }
  j["error_model"] = {{"a0", m.a0}, {"a1", m.a1}, {"b0", m.b0}, {"b1", m.b1}};
  j["transfer_function"] = "(" + term(m.b1, "s") + " + " + term(m.b0, "") + ") / (s^2 + " + term(m.a1, "s") +
                           " + " + term(m.a0, "") + ")";
  j["dc_gain"] = tf.dc_gain();
  j["stability_constraint"] = {{"alpha", a.constraint.alpha},
                               {"beta", a.constraint.beta},
                               {"generalized", a.kind != ModelKind::UniCs}};
  j["critical_frequencies"] = a.critical;
  ordered_json bands = ordered_json::array();
  for (const auto& b : a.bands) {
    bands.push_back({{"lo", b.lo}, {"hi", json_number_or_null(b.hi)}, {"stable", b.stable}});
  }
  j["bands"] = bands;
  if (a.kind == ModelKind::UniCs) {
    const double bound = 2 * spec.params.k / spec.params.m;
    j["condition"] = "stable iff ω² > 2k/m = " + format_double(bound);
    j["threshold"] = std::sqrt(bound);
  } else {
    j["condition"] = "stable iff ω⁴ + (" + format_double(a.constraint.alpha) + ") ω² + (" +
                     format_double(a.constraint.beta) + ") > 0, i.e. ω ∈ " + describe_bands(a.bands);
  }
  out << j.dump(2) << '\n';
  return kSuccess;
}

int cmd_sweep(const std::string& spec_path, double omega_min, double omega_max, std::size_t points,
              const std::string& spacing, const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto spec = read_controller_spec(spec_path);
  const auto a = analyze_spec(spec);
  if (spacing != "log" && spacing != "lin") throw ValidationError("--spacing must be log or lin");
  const auto grid = frequency_grid(omega_min, omega_max, points,
                                   spacing == "log" ? GridSpacing::Logarithmic : GridSpacing::Linear);
  const auto rows = sweep(transfer_function(a.model), grid);

  Output dest(out_path, out);
  write_sweep_csv(dest.stream(), rows);
  dest.finish();

  std::size_t stable = 0;
  for (const auto& r : rows) stable += r.magnitude < 1.0 ? 1 : 0;
  ordered_json summary;
  summary["model"] = model_name(a.kind);
  summary["points"] = rows.size();
  summary["stable_fraction"] = static_cast<double>(stable) / static_cast<double>(rows.size());
  summary["critical_frequencies"] = a.critical;
  err << summary.dump() << '\n';
  return kSuccess;
}

struct SimulateArgs {
  std::string spec_path;
  std::int64_t n = 0;
  double omega = 1.0;
  double amplitude = 1.0;
  double duration = 200.0;
  std::string dt = "auto";
  double discard = 0.7;
  bool state_space = false;
  double spacing = 0.0;
  std::string out_path;
  std::string report_path;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  auto spec = read_controller_spec(args.spec_path);
  if (args.n != 0) spec.params.n = args.n;
  const auto a = analyze_spec(spec);
  if (!std::isfinite(args.omega) || !(args.omega > 0)) throw ValidationError("--omega must be positive");

  SimConfig cfg;
  cfg.duration = args.duration;
  cfg.discard_fraction = args.discard;
  if (args.dt == "auto") {
    cfg.dt = default_time_step(a.model, args.omega);
  } else {
    try {
      std::size_t used = 0;
      cfg.dt = std::stod(args.dt, &used);
      if (used != args.dt.size()) throw std::invalid_argument(args.dt);
    } catch (const std::logic_error&) {
      throw ValidationError("--dt must be 'auto' or a number");
    }
  }

  ChainSeries errors;
  Output dest(args.out_path, out);
  if (args.state_space) {
    if (a.kind != ModelKind::UniCs) throw ValidationError("--state-space is available for uni_cs only");
    const double amp = args.amplitude, omega = args.omega;
    const auto run = simulate_state_space_uni_cs(spec.params, cfg, [=](double t) { return amp * std::sin(omega * t); },
                                                 args.spacing);
    run.write_csv(dest.stream());
    errors = run.spacing_errors();
  } else {
    cfg.input = SineInput{args.amplitude, args.omega};
    errors = simulate_chain(a.model, static_cast<std::size_t>(spec.params.n), cfg);
    errors.write_csv(dest.stream());
  }
  dest.finish();

  const auto report = attenuation_report(errors, cfg.discard_fraction);
  ordered_json j;
  j["model"] = model_name(a.kind);
  j["mode"] = args.state_space ? "state_space" : "error_chain";
  j["omega"] = args.omega;
  j["dt"] = cfg.dt;
  j["window_start"] = report.window_start;
  j["analytic_magnitude"] = frequency_response(transfer_function(a.model), args.omega).magnitude;
  j["ratios"] = report.ratios;
  j["attenuates"] = report.attenuates;
  if (args.report_path.empty()) {
    err << j.dump() << '\n';
  } else {
    Output rep(args.report_path, err);
    rep.stream() << j.dump(2) << '\n';
    rep.finish();
  }
  return kSuccess;
}

int cmd_monitor(const std::string& trace_path, std::ostream& out) {
  const auto verdict = monitor_buffer(read_file(trace_path));
  out << verdict_to_json(verdict) << '\n';
  return verdict.outcome == Outcome::Pass ? kSuccess : kMonitorFail;
}

int cmd_gen_trace(std::uint64_t seed, std::size_t length, const std::string& spec_path,
                  const std::vector<std::string>& violations, double jitter, const std::string& out_path,
                  std::ostream& out) {
  const auto spec = read_controller_spec(spec_path);
  std::vector<PlannedViolation> plan;
  for (const auto& item : violations) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) plan.push_back(parse_planned_violation(part));
    }
  }
  GeneratorOptions options;
  options.jitter = jitter;
  const auto trace = generate_trace(seed, length, spec, plan, options);
  Output dest(out_path, out);
  write_trace(dest.stream(), trace);
  dest.finish();
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Platoon string-stability analysis, simulation and trace monitoring", "platoon-stab"};
  app.require_subcommand(1);

  std::string spec_path, out_path, trace_path;

  auto* analyze = app.add_subcommand("analyze", "Error model, transfer function and stability condition");
  analyze->add_option("--spec", spec_path, "Controller spec JSON")->required();

  double omega_min = 0.1, omega_max = 10.0;
  std::size_t points = 1000;
  std::string spacing = "log";
  auto* sweep_cmd = app.add_subcommand("sweep", "Frequency response CSV over a frequency grid");
  sweep_cmd->add_option("--spec", spec_path, "Controller spec JSON")->required();
  sweep_cmd->add_option("--omega-min", omega_min, "Lowest frequency [rad/s]");
  sweep_cmd->add_option("--omega-max", omega_max, "Highest frequency [rad/s]");
  sweep_cmd->add_option("--points", points, "Grid points (>= 2)");
  sweep_cmd->add_option("--spacing", spacing, "Grid spacing: log or lin");
  sweep_cmd->add_option("--out", out_path, "CSV destination (default stdout)");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Time-domain simulation with attenuation report");
  simulate->add_option("--spec", sim.spec_path, "Controller spec JSON")->required();
  simulate->add_option("--n", sim.n, "Vehicle count (default: from spec)");
  simulate->add_option("--omega", sim.omega, "Input frequency [rad/s]")->required();
  simulate->add_option("--amp", sim.amplitude, "Input amplitude: z_1 [m], or leader force [N] with --state-space");
  simulate->add_option("--duration", sim.duration, "Simulated time [s]");
  simulate->add_option("--dt", sim.dt, "Step [s] or 'auto'");
  simulate->add_option("--discard", sim.discard, "Transient share of the run excluded from the report");
  simulate->add_flag("--state-space", sim.state_space, "Integrate vehicle positions and velocities (uni_cs only)");
  simulate->add_option("--spacing", sim.spacing, "Desired inter-vehicle spacing for --state-space [m]");
  simulate->add_option("--out", sim.out_path, "Trajectory CSV destination (default stdout)");
  simulate->add_option("--report", sim.report_path, "Attenuation report JSON destination (default stderr)");

  auto* monitor = app.add_subcommand("monitor", "Check a trace against Globally(P1 and P2)");
  monitor->add_option("--trace", trace_path, "Line-delimited JSON trace")->required();

  std::uint64_t seed = 0;
  std::size_t length = 0;
  std::vector<std::string> violations;
  double jitter = 0.1;
  auto* gen = app.add_subcommand("gen-trace", "Generate a pseudo-random trace");
  gen->add_option("--seed", seed, "RNG seed")->required();
  gen->add_option("--len", length, "Number of events")->required();
  gen->add_option("--spec", spec_path, "Template controller spec JSON")->required();
  gen->add_option("--violate", violations, "Planned violation <index>:P1|P2 (repeatable, comma-separated)");
  gen->add_option("--jitter", jitter, "Relative parameter jitter in [0, 1)");
  gen->add_option("--out", out_path, "Trace destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(spec_path, out);
    if (sweep_cmd->parsed()) return cmd_sweep(spec_path, omega_min, omega_max, points, spacing, out_path, out, err);
    if (simulate->parsed()) return cmd_simulate(sim, out, err);
    if (monitor->parsed()) return cmd_monitor(trace_path, out);
    if (gen->parsed()) return cmd_gen_trace(seed, length, spec_path, violations, jitter, out_path, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kDivergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace platoon::cli
