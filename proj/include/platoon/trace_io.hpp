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
#include <iosfwd>
#include <string>
#include <string_view>

#include "platoon/monitor.hpp"

namespace platoon {

// Line-delimited JSON traces, one event per line:
//   {"i":0,"ct":"autonomous","cf":"unidirectional","st":"constant_spacing",
//    "n":10,"m":1000,"k":2000,"c":400,"h":1,"ch":1,"vd":25,"h0":1,
//    "ca":50,"cd":50,"w":3}
// Keys may appear in any order; all fifteen are required, unknown or repeated
// keys are rejected, "i" must equal the event's position in the file.

/// Parses one line (without its terminating LF). Throws ParseError carrying
/// `line_no`.
Event parse_event_line(std::string_view line, std::size_t line_no, std::size_t expected_index);

/// Calls `sink(const Event&)` for each line of `buffer` in order. A trailing
/// LF is optional; any other empty line is an error. Returns the event count.
template <typename Sink>
std::size_t for_each_event(std::string_view buffer, Sink&& sink) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < buffer.size()) {
    std::size_t end = buffer.find('\n', pos);
    if (end == std::string_view::npos) end = buffer.size();
    sink(parse_event_line(buffer.substr(pos, end - pos), count + 1, count));
    ++count;
    pos = end + 1;
  }
  return count;
}

Trace parse_trace(std::string_view buffer, std::string source = {});

/// Whole file as bytes. Throws IoError.
std::string read_file(const std::string& path);

Trace read_trace_file(const std::string& path);

/// Parses and folds in one pass without materializing the trace.
Verdict monitor_buffer(std::string_view buffer);

/// Event as one JSON line, without the LF. Numbers use the shortest
/// round-trip representation.
std::string format_event_line(const Event& e);

void write_trace(std::ostream& out, const Trace& trace);

/// {"outcome":...,"first_violation":...,"events":...,"p1_failures":...,
///  "p2_failures":...,"seconds":...}
std::string verdict_to_json(const Verdict& v);

}  // namespace platoon
