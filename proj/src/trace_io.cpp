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

#include "platoon/trace_io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <ostream>

#include <json.hpp>

#include "platoon/error.hpp"
#include "platoon/numfmt.hpp"

namespace platoon {

namespace {

constexpr std::array<double, 23> kPow10 = {1e0,  1e1,  1e2,  1e3,  1e4,  1e5,  1e6,  1e7,
                                           1e8,  1e9,  1e10, 1e11, 1e12, 1e13, 1e14, 1e15,
                                           1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22};

enum Key : unsigned {
  kI, kCt, kCf, kSt, kN, kM, kK, kC, kH, kCh, kVd, kH0, kCa, kCd, kW, kKeyCount
};

constexpr std::array<std::string_view, kKeyCount> kKeyNames = {
    "i", "ct", "cf", "st", "n", "m", "k", "c", "h", "ch", "vd", "h0", "ca", "cd", "w"};

int key_of(std::string_view s) noexcept {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'i': return kI;
      case 'n': return kN;
      case 'm': return kM;
      case 'k': return kK;
      case 'c': return kC;
      case 'h': return kH;
      case 'w': return kW;
      default: return -1;
    }
  }
  if (s.size() != 2) return -1;
  switch (s[0]) {
    case 'c':
      if (s[1] == 't') return kCt;
      if (s[1] == 'f') return kCf;
      if (s[1] == 'h') return kCh;
      if (s[1] == 'a') return kCa;
      if (s[1] == 'd') return kCd;
      return -1;
    case 's': return s[1] == 't' ? static_cast<int>(kSt) : -1;
    case 'v': return s[1] == 'd' ? static_cast<int>(kVd) : -1;
    case 'h': return s[1] == '0' ? static_cast<int>(kH0) : -1;
    default: return -1;
  }
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

/// Recursive-descent reader for one flat JSON object. Values are strings or
/// numbers; nesting is rejected because no trace field needs it.
class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : p_(line.data()), end_(line.data() + line.size()), line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_no_); }

  void skip_ws() noexcept {
    while (p_ < end_ && (*p_ == ' ' || *p_ == '\t' || *p_ == '\r' || *p_ == '\n')) ++p_;
  }

  bool at_end() const noexcept { return p_ == end_; }

  void expect(char ch) {
    skip_ws();
    if (p_ == end_ || *p_ != ch) {
      fail(std::string("expected '") + ch + "'" + (p_ == end_ ? " before end of line" : ""));
    }
    ++p_;
  }

  bool consume(char ch) {
    skip_ws();
    if (p_ < end_ && *p_ == ch) {
      ++p_;
      return true;
    }
    return false;
  }

  /// String contents. Returns a view into the line when no escapes occur,
  /// otherwise into `scratch_`.
  std::string_view string() {
    skip_ws();
    if (p_ == end_ || *p_ != '"') fail("expected string");
    ++p_;
    const char* start = p_;
    while (p_ < end_ && *p_ != '"' && *p_ != '\\') {
      if (static_cast<unsigned char>(*p_) < 0x20) fail("control character in string");
      ++p_;
    }
    if (p_ == end_) fail("unterminated string");
    if (*p_ == '"') return std::string_view(start, static_cast<std::size_t>(p_++ - start));
    scratch_.assign(start, p_);
    while (true) {
      if (p_ == end_) fail("unterminated string");
      const char ch = *p_++;
      if (ch == '"') return scratch_;
      if (static_cast<unsigned char>(ch) < 0x20) fail("control character in string");
      if (ch != '\\') {
        scratch_ += ch;
        continue;
      }
      if (p_ == end_) fail("unterminated escape");
      switch (const char esc = *p_++) {
        case '"': case '\\': case '/': scratch_ += esc; break;
        case 'b': scratch_ += '\b'; break;
        case 'f': scratch_ += '\f'; break;
        case 'n': scratch_ += '\n'; break;
        case 'r': scratch_ += '\r'; break;
        case 't': scratch_ += '\t'; break;
        case 'u': {
          if (end_ - p_ < 4) fail("truncated \\u escape");
          std::uint32_t cp = 0;
          auto res = std::from_chars(p_, p_ + 4, cp, 16);
          if (res.ptr != p_ + 4) fail("bad \\u escape");
          p_ += 4;
          append_utf8(scratch_, cp);
          break;
        }
        default: fail("bad escape");
      }
    }
  }

  /// JSON number. Sets `integral` when it has neither fraction nor exponent.
  double number(bool& integral) {
    skip_ws();
    const char* start = p_;
    const bool negative = p_ < end_ && *p_ == '-';
    if (negative) ++p_;
    if (p_ == end_ || !is_digit(*p_)) fail("expected number");

    std::uint64_t mantissa = 0;
    int digits = 0;       // significant digits accumulated in mantissa
    int dropped = 0;      // integer digits beyond the 19 that fit
    int exponent = 0;
    auto take = [&](char d) {
      if (digits < 19) {
        mantissa = mantissa * 10 + static_cast<unsigned>(d - '0');
        if (mantissa != 0) ++digits;
        return true;
      }
      return false;
    };

    if (*p_ == '0') {
      ++p_;
      if (p_ < end_ && is_digit(*p_)) fail("leading zero in number");
    } else {
      while (p_ < end_ && is_digit(*p_)) {
        if (!take(*p_)) ++dropped;
        ++p_;
      }
    }
    integral = true;
    if (p_ < end_ && *p_ == '.') {
      integral = false;
      ++p_;
      if (p_ == end_ || !is_digit(*p_)) fail("expected digit after decimal point");
      while (p_ < end_ && is_digit(*p_)) {
        if (take(*p_)) --exponent;
        ++p_;
      }
    }
    if (p_ < end_ && (*p_ == 'e' || *p_ == 'E')) {
      integral = false;
      ++p_;
      bool exp_negative = false;
      if (p_ < end_ && (*p_ == '+' || *p_ == '-')) exp_negative = *p_++ == '-';
      if (p_ == end_ || !is_digit(*p_)) fail("expected exponent digits");
      int e = 0;
      while (p_ < end_ && is_digit(*p_)) {
        if (e < 100000) e = e * 10 + (*p_ - '0');
        ++p_;
      }
      exponent += exp_negative ? -e : e;
    }
    exponent += dropped;

    double value;
    // Exact mantissa and exact power of ten: one correctly rounded operation.
    if (dropped == 0 && mantissa <= (std::uint64_t{1} << 53) && exponent >= -22 && exponent <= 22) {
      const auto m = static_cast<double>(mantissa);
      value = exponent < 0 ? m / kPow10[static_cast<std::size_t>(-exponent)]
                           : m * kPow10[static_cast<std::size_t>(exponent)];
      if (negative) value = -value;
    } else {
      auto res = std::from_chars(start, p_, value);
      if (res.ec == std::errc::result_out_of_range) fail("number out of range");
      if (res.ec != std::errc() || res.ptr != p_) fail("bad number");
    }
    if (!std::isfinite(value)) fail("number out of range");
    return value;
  }

 private:
  static bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

  const char* p_;
  const char* end_;
  std::size_t line_no_;
  std::string scratch_;
};

std::uint64_t to_count(LineParser& parser, double value, bool integral, std::string_view key) {
  if (!integral || value < 0 || value > 9.007199254740992e15) {
    parser.fail("\"" + std::string(key) + "\" must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(value);
}

}  // namespace

Event parse_event_line(std::string_view line, std::size_t line_no, std::size_t expected_index) {
  LineParser parser(line, line_no);
  parser.skip_ws();
  if (parser.at_end()) parser.fail("empty line");
  parser.expect('{');

  Event e;
  e.index = expected_index;
  unsigned seen = 0;
  std::string key_text;

  if (!parser.consume('}')) {
    do {
      const std::string_view key_view = parser.string();
      const int key = key_of(key_view);
      if (key < 0) parser.fail("unknown key \"" + std::string(key_view) + "\"");
      if (seen & (1u << key)) parser.fail("duplicate key \"" + std::string(key_view) + "\"");
      seen |= 1u << key;
      parser.expect(':');

      auto& p = e.spec.params;
      bool integral = false;
      switch (key) {
        case kCt: {
          const auto s = parser.string();
          auto v = parse_controller_type(s);
          if (!v) parser.fail("bad controller type \"" + std::string(s) + "\"");
          e.spec.controller_type = *v;
          break;
        }
        case kCf: {
          const auto s = parser.string();
          auto v = parse_configuration(s);
          if (!v) parser.fail("bad configuration \"" + std::string(s) + "\"");
          e.spec.configuration = *v;
          break;
        }
        case kSt: {
          const auto s = parser.string();
          auto v = parse_strategy(s);
          if (!v) parser.fail("bad strategy \"" + std::string(s) + "\"");
          e.spec.strategy = *v;
          break;
        }
        case kI: {
          const double v = parser.number(integral);
          if (to_count(parser, v, integral, "i") != expected_index) {
            parser.fail("index " + format_double(v) + " does not match position " + std::to_string(expected_index));
          }
          break;
        }
        case kN: {
          const double v = parser.number(integral);
          p.n = static_cast<std::int64_t>(to_count(parser, v, integral, "n"));
          break;
        }
        case kM: p.m = parser.number(integral); break;
        case kK: p.k = parser.number(integral); break;
        case kC: p.c = parser.number(integral); break;
        case kH: p.h = parser.number(integral); break;
        case kCh: p.ch = parser.number(integral); break;
        case kVd: p.vd = parser.number(integral); break;
        case kH0: p.h0 = parser.number(integral); break;
        case kCa: p.ca = parser.number(integral); break;
        case kCd: p.cd = parser.number(integral); break;
        case kW: e.omega = parser.number(integral); break;
        default: break;
      }
    } while (parser.consume(','));
    parser.expect('}');
  }
  parser.skip_ws();
  if (!parser.at_end()) parser.fail("trailing characters after object");

  constexpr unsigned all = (1u << kKeyCount) - 1;
  if (seen != all) {
    for (unsigned i = 0; i < kKeyCount; ++i) {
      if (!(seen & (1u << i))) parser.fail("missing key \"" + std::string(kKeyNames[i]) + "\"");
    }
  }
  return e;
}

Trace parse_trace(std::string_view buffer, std::string source) {
  Trace trace;
  trace.source = std::move(source);
  for_each_event(buffer, [&](const Event& e) { trace.events.push_back(e); });
  return trace;
}

std::string read_file(const std::string& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> file(std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!file) throw IoError("cannot open " + path);
  std::string data;
  if (std::fseek(file.get(), 0, SEEK_END) == 0) {
    const long size = std::ftell(file.get());
    if (size > 0) data.reserve(static_cast<std::size_t>(size));
    std::rewind(file.get());
  }
  char buf[1 << 16];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, file.get())) > 0) data.append(buf, got);
  if (std::ferror(file.get())) throw IoError("cannot read " + path);
  return data;
}

Trace read_trace_file(const std::string& path) { return parse_trace(read_file(path), path); }

Verdict monitor_buffer(std::string_view buffer) {
  const auto start = std::chrono::steady_clock::now();
  MonitorFold fold;
  for_each_event(buffer, [&](const Event& e) { fold.observe(e); });
  Verdict v = fold.result();
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return v;
}

std::string format_event_line(const Event& e) {
  const auto& p = e.spec.params;
  std::string out;
  out.reserve(256);
  out += "{\"i\":";
  out += std::to_string(e.index);
  out += ",\"ct\":\"";
  out += to_string(e.spec.controller_type);
  out += "\",\"cf\":\"";
  out += to_string(e.spec.configuration);
  out += "\",\"st\":\"";
  out += to_string(e.spec.strategy);
  out += "\",\"n\":";
  out += std::to_string(p.n);
  const std::pair<const char*, double> fields[] = {{",\"m\":", p.m},   {",\"k\":", p.k},   {",\"c\":", p.c},
                                                   {",\"h\":", p.h},   {",\"ch\":", p.ch}, {",\"vd\":", p.vd},
                                                   {",\"h0\":", p.h0}, {",\"ca\":", p.ca}, {",\"cd\":", p.cd},
                                                   {",\"w\":", e.omega}};
  for (const auto& [key, value] : fields) {
    out += key;
    append_double(out, value);
  }
  out += '}';
  return out;
}

void write_trace(std::ostream& out, const Trace& trace) {
  std::string buf;
  for (const auto& e : trace.events) {
    buf += format_event_line(e);
    buf += '\n';
    if (buf.size() > (1u << 20)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

std::string verdict_to_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["outcome"] = to_string(v.outcome);
  if (v.first_violation) {
    j["first_violation"] = {{"index", v.first_violation->index},
                            {"predicate", to_string(v.first_violation->predicate)},
                            {"reason", v.first_violation->reason}};
  } else {
    j["first_violation"] = nullptr;
  }
  j["events"] = v.events;
  j["p1_failures"] = v.p1_failures;
  j["p2_failures"] = v.p2_failures;
  j["seconds"] = v.seconds;
  return j.dump();
}

}  // namespace platoon
