// SPDX-License-Identifier: Apache-2.0
//
// Domain spec files: a small TOML subset, line-oriented.
//
//   # comment
//   preset = "figure1"            # standalone shorthand, or:
//
//   [strip]
//   y_lo = 0.0
//   y_hi = 4.0
//   mid  = 2.0
//
//   [[obstacles]]
//   kind = "slit"
//   x    = 1.5707963267948966
//   span = [0.0, 2.0]
//
//   [[obstacles]]
//   kind       = "tooth"
//   side       = "bottom"
//   apex_x     = 1.5707963267948966
//   half_width = 1.2
//
// Supported values: floats, quoted strings, and two-element float arrays.
// Parse and validation errors throw SpecError with a line-tagged field.

#pragma once

#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tubelab/errors.hpp"
#include "tubelab/geometry.hpp"

namespace tubelab {

namespace detail {

[[nodiscard]] inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[nodiscard]] inline double parse_float(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t.empty()) throw SpecError(where, "expected a number");
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw SpecError(where, "malformed number '" + t + "'");
  return value;
}

[[nodiscard]] inline std::string parse_string(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '"' || t.back() != '"') {
    throw SpecError(where, "expected a quoted string");
  }
  return t.substr(1, t.size() - 2);
}

[[nodiscard]] inline Interval parse_pair(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw SpecError(where, "expected [lo, hi]");
  }
  const std::string inner = t.substr(1, t.size() - 2);
  const auto comma = inner.find(',');
  if (comma == std::string::npos) throw SpecError(where, "expected two comma-separated numbers");
  const double lo = parse_float(inner.substr(0, comma), where);
  const double hi = parse_float(inner.substr(comma + 1), where);
  if (!(lo <= hi)) throw SpecError(where, "range must satisfy lo <= hi");
  return {lo, hi};
}

}  // namespace detail

// Builds the named preset domain.  Recognized: "figure1", "figure2", "strip".
[[nodiscard]] inline DomainSpec build_preset(const std::string& name, double half_width = 1.2,
                                             double apex_offset = 0.0) {
  if (name == "figure1" || name == "fig1") return build_figure1();
  if (name == "figure2" || name == "fig2") return build_figure2(half_width, apex_offset);
  if (name == "strip") return build_strip();
  throw SpecError("preset", "unknown preset '" + name + "' (expected figure1, figure2, strip)");
}

// Parses and validates a spec stream.
[[nodiscard]] inline DomainSpec parse_spec(std::istream& in) {
  DomainSpec d;
  d.y_lo = 0.0;
  d.y_hi = 4.0;
  d.mid = 2.0;

  enum class Section { None, Strip, Obstacle };
  Section section = Section::None;
  std::optional<std::string> preset;
  bool saw_strip_or_obstacle = false;

  struct PendingObstacle {
    std::map<std::string, std::string> keys;
    int line{0};
  };
  std::vector<PendingObstacle> pending;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);

    if (line == "[strip]") {
      section = Section::Strip;
      saw_strip_or_obstacle = true;
      continue;
    }
    if (line == "[[obstacles]]") {
      section = Section::Obstacle;
      saw_strip_or_obstacle = true;
      pending.push_back({{}, line_no});
      continue;
    }
    if (line.front() == '[') throw SpecError(where, "unknown section " + line);

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError(where, "expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = line.substr(eq + 1);

    switch (section) {
      case Section::None:
        if (key == "preset") {
          preset = detail::parse_string(value, where);
        } else {
          throw SpecError(where, "unknown top-level key '" + key + "'");
        }
        break;
      case Section::Strip:
        if (key == "y_lo") {
          d.y_lo = detail::parse_float(value, where);
        } else if (key == "y_hi") {
          d.y_hi = detail::parse_float(value, where);
        } else if (key == "mid") {
          d.mid = detail::parse_float(value, where);
        } else {
          throw SpecError(where, "unknown strip key '" + key + "'");
        }
        break;
      case Section::Obstacle:
        pending.back().keys[key] = value;
        break;
    }
  }

  if (preset) {
    if (saw_strip_or_obstacle) {
      throw SpecError("preset", "a preset spec must not also define strip or obstacles");
    }
    return build_preset(*preset);
  }

  for (const PendingObstacle& ob : pending) {
    const std::string where = "obstacle at line " + std::to_string(ob.line);
    const auto get = [&](const char* key) -> const std::string& {
      const auto it = ob.keys.find(key);
      if (it == ob.keys.end()) throw SpecError(where, std::string("missing key '") + key + "'");
      return it->second;
    };
    const auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
      for (const auto& [key, value] : ob.keys) {
        bool known = false;
        for (const char* name : allowed) known = known || key == name;
        if (!known) throw SpecError(where, "unknown obstacle key '" + key + "'");
      }
    };
    const std::string kind = detail::parse_string(get("kind"), where);
    if (kind == "slit") {
      reject_unknown({"kind", "x", "span"});
      d.obstacles.push_back(VerticalSlit{detail::parse_float(get("x"), where),
                                         detail::parse_pair(get("span"), where)});
    } else if (kind == "tooth") {
      reject_unknown({"kind", "side", "apex_x", "half_width"});
      const std::string side = detail::parse_string(get("side"), where);
      if (side != "bottom" && side != "top") {
        throw SpecError(where, "side must be \"bottom\" or \"top\"");
      }
      d.obstacles.push_back(SmoothTooth{side == "bottom" ? ToothSide::Bottom : ToothSide::Top,
                                        detail::parse_float(get("apex_x"), where),
                                        detail::parse_float(get("half_width"), where)});
    } else {
      throw SpecError(where, "kind must be \"slit\" or \"tooth\"");
    }
  }

  validate_domain(d);
  return d;
}

[[nodiscard]] inline DomainSpec parse_spec_text(const std::string& text) {
  std::istringstream in(text);
  return parse_spec(in);
}

// Serializes a domain back to the spec format (round-trips through
// parse_spec up to float shortest-form printing).
[[nodiscard]] inline std::string write_spec(const DomainSpec& d) {
  std::ostringstream out;
  out.precision(17);
  out << "[strip]\n";
  out << "y_lo = " << d.y_lo << "\n";
  out << "y_hi = " << d.y_hi << "\n";
  out << "mid = " << d.mid << "\n";
  for (const Obstacle& ob : d.obstacles) {
    out << "\n[[obstacles]]\n";
    if (const auto* slit = std::get_if<VerticalSlit>(&ob)) {
      out << "kind = \"slit\"\n";
      out << "x = " << slit->x << "\n";
      out << "span = [" << slit->span.lo << ", " << slit->span.hi << "]\n";
    } else {
      const auto& tooth = std::get<SmoothTooth>(ob);
      out << "kind = \"tooth\"\n";
      out << "side = \"" << (tooth.side == ToothSide::Bottom ? "bottom" : "top") << "\"\n";
      out << "apex_x = " << tooth.apex_x << "\n";
      out << "half_width = " << tooth.half_width << "\n";
    }
  }
  return out.str();
}

}  // namespace tubelab
