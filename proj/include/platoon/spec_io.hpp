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

#include <string>
#include <string_view>

#include "platoon/model.hpp"

namespace platoon {

/// Reads the controller-spec document
///   {"controller_type":"autonomous|non_autonomous",
///    "configuration":"unidirectional|bidirectional",
///    "strategy":"constant_spacing|variable_spacing|var_time_headway",
///    "params":{"n":int,"m":num,"k":num,"c":num,"h":num,"ch":num,
///              "vd":num,"h0":num,"ca":num,"cd":num}}
/// Structure and types are checked, platoon validity is not. Throws
/// ParseError.
ControllerSpec parse_controller_spec(std::string_view json_text);

/// Throws IoError or ParseError.
ControllerSpec read_controller_spec(const std::string& path);

std::string controller_spec_to_json(const ControllerSpec& spec);

}  // namespace platoon
