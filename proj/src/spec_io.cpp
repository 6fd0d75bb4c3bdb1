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

#include "platoon/spec_io.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "platoon/error.hpp"
#include "platoon/trace_io.hpp"

namespace platoon {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing \"" + std::string(key) + "\" in " + where);
  return *it;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw ParseError("unknown key \"" + item.key() + "\" in " + where);
  }
}

std::string text(const json& obj, const char* key) {
  const auto& v = field(obj, key, "spec");
  if (!v.is_string()) throw ParseError("\"" + std::string(key) + "\" must be a string");
  return v.get<std::string>();
}

double real(const json& params, const char* key) {
  const auto& v = field(params, key, "params");
  if (!v.is_number()) throw ParseError("\"" + std::string(key) + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError("\"" + std::string(key) + "\" must be finite");
  return d;
}

}  // namespace

ControllerSpec parse_controller_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("spec must be a JSON object");
  reject_unknown(doc, {"controller_type", "configuration", "strategy", "params"}, "spec");

  ControllerSpec spec;
  const auto ct = text(doc, "controller_type");
  const auto cf = text(doc, "configuration");
  const auto st = text(doc, "strategy");
  auto type = parse_controller_type(ct);
  auto configuration = parse_configuration(cf);
  auto strategy = parse_strategy(st);
  if (!type) throw ParseError("bad controller_type \"" + ct + "\"");
  if (!configuration) throw ParseError("bad configuration \"" + cf + "\"");
  if (!strategy) throw ParseError("bad strategy \"" + st + "\"");
  spec.controller_type = *type;
  spec.configuration = *configuration;
  spec.strategy = *strategy;

  const auto& params = field(doc, "params", "spec");
  if (!params.is_object()) throw ParseError("\"params\" must be an object");
  reject_unknown(params, {"n", "m", "k", "c", "h", "ch", "vd", "h0", "ca", "cd"}, "params");
  const auto& n = field(params, "n", "params");
  if (!n.is_number_integer() || n.get<std::int64_t>() < 0) throw ParseError("\"n\" must be a nonnegative integer");

  auto& p = spec.params;
  p.n = n.get<std::int64_t>();
  p.m = real(params, "m");
  p.k = real(params, "k");
  p.c = real(params, "c");
  p.h = real(params, "h");
  p.ch = real(params, "ch");
  p.vd = real(params, "vd");
  p.h0 = real(params, "h0");
  p.ca = real(params, "ca");
  p.cd = real(params, "cd");
  return spec;
}

ControllerSpec read_controller_spec(const std::string& path) { return parse_controller_spec(read_file(path)); }

std::string controller_spec_to_json(const ControllerSpec& spec) {
  const auto& p = spec.params;
  nlohmann::ordered_json j;
  j["controller_type"] = to_string(spec.controller_type);
  j["configuration"] = to_string(spec.configuration);
  j["strategy"] = to_string(spec.strategy);
  j["params"] = {{"n", p.n},   {"m", p.m},   {"k", p.k},   {"c", p.c},   {"h", p.h},
                 {"ch", p.ch}, {"vd", p.vd}, {"h0", p.h0}, {"ca", p.ca}, {"cd", p.cd}};
  return j.dump();
}

}  // namespace platoon
