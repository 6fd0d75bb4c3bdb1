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

#include <cstdint>
#include <optional>
#include <string_view>

namespace platoon {

enum class ControllerType { Autonomous, NonAutonomous };
enum class Configuration { Unidirectional, Bidirectional };
enum class Strategy { ConstantSpacing, VariableSpacing, VarTimeHeadway };

/// Parameters shared by every vehicle of a homogeneous platoon.
struct PlatoonParams {
  std::int64_t n = 0;  ///< vehicle count
  double m = 0.0;      ///< vehicle mass [kg]
  double k = 0.0;      ///< position gain [N/m]
  double c = 0.0;      ///< velocity gain [N s/m]
  double h = 0.0;      ///< time headway [s]
  double ch = 0.0;     ///< headway fluctuation gain [-]
  double vd = 0.0;     ///< desired platoon speed [m/s]
  double h0 = 0.0;     ///< nominal time headway [s]
  double ca = 0.0;     ///< extra velocity gain w.r.t. the leader [N s/m]
  double cd = 0.0;     ///< extra velocity gain w.r.t. the virtual mass [N s/m]

  friend bool operator==(const PlatoonParams&, const PlatoonParams&) = default;
};

struct ControllerSpec {
  ControllerType controller_type = ControllerType::Autonomous;
  Configuration configuration = Configuration::Unidirectional;
  Strategy strategy = Strategy::ConstantSpacing;
  PlatoonParams params;

  friend bool operator==(const ControllerSpec&, const ControllerSpec&) = default;
};

/// The six dynamic models with a closed-form spacing-error equation.
enum class ModelKind { UniCs, UniVs, UniVth, BiCs, BiVs, Clcv };

/// Coefficients of z_n'' + a1 z_n' + a0 z_n = b1 z_{n-1}' + b0 z_{n-1}.
struct ErrorModel {
  double a0 = 0.0;  ///< [1/s^2]
  double a1 = 0.0;  ///< [1/s]
  double b0 = 0.0;  ///< [1/s^2]
  double b1 = 0.0;  ///< [1/s]

  friend bool operator==(const ErrorModel&, const ErrorModel&) = default;
};

/// All ten strict conjuncts: 0 < m, k, c, h, ch, vd, h0, ca, cd and 1 < n.
/// Any NaN field makes the predicate false.
bool is_valid_platoon(const PlatoonParams& p) noexcept;

/// The first failed conjunct in declaration order ("0 < m", ..., "1 < n"),
/// or nullopt for a valid platoon.
std::optional<std::string_view> failed_conjunct(const PlatoonParams& p) noexcept;

/// Throws InvalidPlatoonError naming the first failed conjunct.
void require_valid_platoon(const PlatoonParams& p);

/// Model selected by a controller triple. Every non-autonomous triple selects
/// Clcv. Bidirectional variable time headway has no model (nullopt).
std::optional<ModelKind> model_kind(ControllerType type, Configuration configuration,
                                    Strategy strategy) noexcept;
std::optional<ModelKind> model_kind(const ControllerSpec& spec) noexcept;

/// Coefficients of `kind` for `p` without any validity check. Used on hot
/// paths (the monitor) where invalid parameters must still be evaluated.
ErrorModel model_coefficients(ModelKind kind, const PlatoonParams& p) noexcept;

/// Validated mapping from a controller spec to its error model. Throws
/// InvalidPlatoonError for invalid parameters and ValidationError for a
/// triple without a model.
ErrorModel error_model(const ControllerSpec& spec);

/// Short model tag: "uni_cs", "uni_vs", "uni_vth", "bi_cs", "bi_vs", "clcv".
std::string_view model_name(ModelKind kind) noexcept;

std::string_view to_string(ControllerType v) noexcept;
std::string_view to_string(Configuration v) noexcept;
std::string_view to_string(Strategy v) noexcept;

/// Inverse of to_string for the wire names ("autonomous", "bidirectional",
/// "var_time_headway", ...).
std::optional<ControllerType> parse_controller_type(std::string_view s) noexcept;
std::optional<Configuration> parse_configuration(std::string_view s) noexcept;
std::optional<Strategy> parse_strategy(std::string_view s) noexcept;

}  // namespace platoon
