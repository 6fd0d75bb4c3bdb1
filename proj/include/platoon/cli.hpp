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

#include <iosfwd>

namespace platoon::cli {

/// Process exit codes. Every failure maps to exactly one of these.
enum ExitCode : int {
  kSuccess = 0,
  kIoError = 1,
  kInvalidInput = 2,
  kDivergence = 3,
  kMonitorFail = 4,
};

/// Runs `platoon-stab <subcommand> ...`. Machine-readable results go to
/// `out` (or the file named by --out); diagnostics, summaries and reports
/// without a file destination go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace platoon::cli
