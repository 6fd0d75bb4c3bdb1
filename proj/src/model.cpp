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

#include "platoon/model.hpp"

#include <string>

#include "platoon/error.hpp"

namespace platoon {

bool is_valid_platoon(const PlatoonParams& p) noexcept {
  return 0 < p.m && 0 < p.k && 0 < p.c && 0 < p.h && 0 < p.ch && 0 < p.vd && 0 < p.h0 &&
         0 < p.ca && 0 < p.cd && 1 < p.n;
}

std::optional<std::string_view> failed_conjunct(const PlatoonParams& p) noexcept {
  // Written as !(0 < x) so that NaN fails.
  if (!(0 < p.m)) return "0 < m";
  if (!(0 < p.k)) return "0 < k";
  if (!(0 < p.c)) return "0 < c";
  if (!(0 < p.h)) return "0 < h";
  if (!(0 < p.ch)) return "0 < ch";
  if (!(0 < p.vd)) return "0 < vd";
  if (!(0 < p.h0)) return "0 < h0";
  if (!(0 < p.ca)) return "0 < ca";
  if (!(0 < p.cd)) return "0 < cd";
  if (!(1 < p.n)) return "1 < n";
  return std::nullopt;
}

void require_valid_platoon(const PlatoonParams& p) {
  if (auto failed = failed_conjunct(p)) throw InvalidPlatoonError(std::string(*failed));
}

std::optional<ModelKind> model_kind(ControllerType type, Configuration configuration,
                                    Strategy strategy) noexcept {
  if (type == ControllerType::NonAutonomous) return ModelKind::Clcv;
  if (configuration == Configuration::Unidirectional) {
    switch (strategy) {
      case Strategy::ConstantSpacing: return ModelKind::UniCs;
      case Strategy::VariableSpacing: return ModelKind::UniVs;
      case Strategy::VarTimeHeadway: return ModelKind::UniVth;
    }
  } else {
    switch (strategy) {
      case Strategy::ConstantSpacing: return ModelKind::BiCs;
      case Strategy::VariableSpacing: return ModelKind::BiVs;
      case Strategy::VarTimeHeadway: return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<ModelKind> model_kind(const ControllerSpec& spec) noexcept {
  return model_kind(spec.controller_type, spec.configuration, spec.strategy);
}

ErrorModel model_coefficients(ModelKind kind, const PlatoonParams& p) noexcept {
  const double m = p.m, k = p.k, c = p.c;
  switch (kind) {
    case ModelKind::UniCs:
      return {k / m, c / m, k / m, c / m};
    case ModelKind::UniVs:
      return {k / m, (c + k * p.h) / m, k / m, c / m};
    case ModelKind::UniVth:
      return {k / m, (c + k * p.h0 + k * p.ch * p.vd) / m, k / m, (c + k * p.ch * p.vd) / m};
    case ModelKind::BiCs:
      return {2 * k / m, 2 * c / m, k / m, c / m};
    case ModelKind::BiVs:
      return {2 * k / m, (2 * c + k * p.h) / m, k / m, c / m};
    case ModelKind::Clcv:
      return {k / m, (c + p.ca) / m, k / m, c / m};
  }
  return {};
}

ErrorModel error_model(const ControllerSpec& spec) {
  require_valid_platoon(spec.params);
  auto kind = model_kind(spec);
  if (!kind) {
    throw ValidationError("no spacing-error model for " + std::string(to_string(spec.controller_type)) +
                          "/" + std::string(to_string(spec.configuration)) + "/" +
                          std::string(to_string(spec.strategy)));
  }
  return model_coefficients(*kind, spec.params);
}

std::string_view model_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::UniCs: return "uni_cs";
    case ModelKind::UniVs: return "uni_vs";
    case ModelKind::UniVth: return "uni_vth";
    case ModelKind::BiCs: return "bi_cs";
    case ModelKind::BiVs: return "bi_vs";
    case ModelKind::Clcv: return "clcv";
  }
  return "?";
}

std::string_view to_string(ControllerType v) noexcept {
  return v == ControllerType::Autonomous ? "autonomous" : "non_autonomous";
}

std::string_view to_string(Configuration v) noexcept {
  return v == Configuration::Unidirectional ? "unidirectional" : "bidirectional";
}

std::string_view to_string(Strategy v) noexcept {
  switch (v) {
    case Strategy::ConstantSpacing: return "constant_spacing";
    case Strategy::VariableSpacing: return "variable_spacing";
    case Strategy::VarTimeHeadway: return "var_time_headway";
  }
  return "?";
}

std::optional<ControllerType> parse_controller_type(std::string_view s) noexcept {
  if (s == "autonomous") return ControllerType::Autonomous;
  if (s == "non_autonomous") return ControllerType::NonAutonomous;
  return std::nullopt;
}

std::optional<Configuration> parse_configuration(std::string_view s) noexcept {
  if (s == "unidirectional") return Configuration::Unidirectional;
  if (s == "bidirectional") return Configuration::Bidirectional;
  return std::nullopt;
}

std::optional<Strategy> parse_strategy(std::string_view s) noexcept {
  if (s == "constant_spacing") return Strategy::ConstantSpacing;
  if (s == "variable_spacing") return Strategy::VariableSpacing;
  if (s == "var_time_headway") return Strategy::VarTimeHeadway;
  return std::nullopt;
}

}  // namespace platoon
