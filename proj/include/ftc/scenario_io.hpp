#ifndef FTC_SCENARIO_IO_HPP
#define FTC_SCENARIO_IO_HPP

// Line-oriented scenario format:
//
//   # comment
//   protocol = p2            # p1 | p2 | linear
//   alpha = 0.5
//   x0 = [-5, -3, 7, 9, 4, 5]
//   dt = 0.001               # optional, default 1e-3
//   t_max = 100              # optional, default 100
//   agree_tol = 1e-6         # optional, default 1e-6
//   record_every = 10        # optional, default 10
//   schedule = G1:0.25, G2:0.25, cyclic
//
//   [topology.G1]
//   edge 0 1 2
//
// Vertices are 0-indexed; every topology has len(x0) vertices. Without a
// schedule exactly one topology section is allowed.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ftc/error.hpp"
#include "ftc/graph.hpp"
#include "ftc/protocols.hpp"
#include "ftc/simulation.hpp"

namespace ftc {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<std::size_t> to_index(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Shortest decimal text that parses back to the same double.
inline std::string shortest(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

struct PendingEdge {
  std::size_t line;
  Edge edge;
};

}  // namespace detail

/// Parses and validates a scenario document. Malformed lines raise
/// ParseError(SyntaxError, line); well-formed but inconsistent content raises
/// ParseError(ValidationError, line-or-0).
inline Scenario parse_scenario(std::string_view text) {
  using detail::trim;
  std::map<std::string, std::pair<std::size_t, std::string>> keys;
  std::map<std::string, std::vector<detail::PendingEdge>> sections;
  std::vector<std::string> section_order;
  std::string current;

  static const std::array<std::string_view, 8> known = {
      "protocol", "alpha", "x0", "dt", "t_max", "agree_tol", "record_every", "schedule"};

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      constexpr std::string_view prefix = "[topology.";
      if (line.back() != ']' || line.substr(0, prefix.size()) != prefix)
        throw ParseError(ErrorKind::SyntaxError, line_no, "expected [topology.NAME]");
      const auto name = line.substr(prefix.size(), line.size() - prefix.size() - 1);
      if (!detail::valid_name(name))
        throw ParseError(ErrorKind::SyntaxError, line_no, "invalid topology name");
      current = std::string(name);
      if (sections.contains(current))
        throw ParseError(ErrorKind::SyntaxError, line_no, "topology '" + current + "' redefined");
      sections[current];
      section_order.push_back(current);
      continue;
    }

    if (!current.empty()) {
      std::istringstream in{std::string(line)};
      std::string word, si, sj, sw, extra;
      in >> word >> si >> sj >> sw;
      if (word != "edge" || sw.empty() || (in >> extra))
        throw ParseError(ErrorKind::SyntaxError, line_no, "expected 'edge i j w'");
      const auto i = detail::to_index(si);
      const auto j = detail::to_index(sj);
      const auto w = detail::to_double(sw);
      if (!i || !j || !w)
        throw ParseError(ErrorKind::SyntaxError, line_no, "bad number in edge line");
      sections[current].push_back({line_no, {*i, *j, *w}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(ErrorKind::SyntaxError, line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError(ErrorKind::SyntaxError, line_no, "unknown key '" + key + "'");
    if (keys.contains(key))
      throw ParseError(ErrorKind::SyntaxError, line_no, "duplicate key '" + key + "'");
    if (value.empty()) throw ParseError(ErrorKind::SyntaxError, line_no, "empty value");
    keys[key] = {line_no, value};
  }

  auto number = [&](const std::string& key) -> std::optional<double> {
    auto it = keys.find(key);
    if (it == keys.end()) return std::nullopt;
    const auto v = detail::to_double(it->second.second);
    if (!v) throw ParseError(ErrorKind::SyntaxError, it->second.first, key + " is not a number");
    return v;
  };
  auto line_of = [&](const std::string& key) -> std::size_t {
    auto it = keys.find(key);
    return it == keys.end() ? 0 : it->second.first;
  };

  if (!keys.contains("protocol"))
    throw ParseError(ErrorKind::ValidationError, 0, "missing 'protocol'");
  const std::string& proto = keys["protocol"].second;
  ProtocolKind kind;
  if (proto == "p1") kind = ProtocolKind::P1;
  else if (proto == "p2") kind = ProtocolKind::P2;
  else if (proto == "linear") kind = ProtocolKind::Linear;
  else throw ParseError(ErrorKind::SyntaxError, line_of("protocol"), "protocol must be p1, p2 or linear");

  const auto alpha = number("alpha");
  if (!alpha && kind != ProtocolKind::Linear)
    throw ParseError(ErrorKind::ValidationError, 0, "missing 'alpha'");

  // x0
  if (!keys.contains("x0")) throw ParseError(ErrorKind::ValidationError, 0, "missing 'x0'");
  StateVector x0;
  {
    const auto& [ln, v] = keys["x0"];
    std::string_view s = v;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
      throw ParseError(ErrorKind::SyntaxError, ln, "x0 must be a bracketed list");
    s = trim(s.substr(1, s.size() - 2));
    if (s.empty()) throw ParseError(ErrorKind::ValidationError, ln, "x0 is empty");
    for (auto part : detail::split(s, ',')) {
      const auto d = detail::to_double(part);
      if (!d) throw ParseError(ErrorKind::SyntaxError, ln, "bad number in x0");
      x0.push_back(*d);
    }
  }

  std::optional<SwitchingSchedule> schedule;
  if (keys.contains("schedule")) {
    const auto& [ln, v] = keys["schedule"];
    SwitchingSchedule s;
    const auto parts = detail::split(v, ',');
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const auto part = parts[k];
      if (part == "cyclic") {
        if (k + 1 != parts.size())
          throw ParseError(ErrorKind::SyntaxError, ln, "'cyclic' must come last");
        s.cyclic = true;
        continue;
      }
      const auto colon = part.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(ErrorKind::SyntaxError, ln, "schedule entries are name:dwell");
      const auto name = trim(part.substr(0, colon));
      const auto dwell = detail::to_double(part.substr(colon + 1));
      if (!detail::valid_name(name) || !dwell)
        throw ParseError(ErrorKind::SyntaxError, ln, "bad schedule entry");
      s.phases.push_back({std::string(name), *dwell});
    }
    if (s.phases.empty())
      throw ParseError(ErrorKind::ValidationError, ln, "schedule has no phases");
    schedule = std::move(s);
  }

  const auto record_every = number("record_every");
  if (record_every && (*record_every < 1 || *record_every != std::floor(*record_every)))
    throw ParseError(ErrorKind::ValidationError, line_of("record_every"),
                     "record_every must be a positive integer");

  try {
    Scenario sc{ProtocolSpec(kind, alpha.value_or(1.0)), {}, std::move(schedule), std::move(x0)};
    if (auto v = number("dt")) sc.dt = *v;
    if (auto v = number("t_max")) sc.t_max = *v;
    if (auto v = number("agree_tol")) sc.agree_tol = *v;
    if (record_every) sc.record_every = static_cast<std::size_t>(*record_every);

    for (const auto& name : section_order) {
      std::vector<Edge> edges;
      for (const auto& pe : sections[name]) edges.push_back(pe.edge);
      try {
        sc.topologies.emplace(name, Topology(sc.x0.size(), edges));
      } catch (const Error& e) {
        // Re-run edge by edge to pin the offending line.
        std::vector<Edge> prefix;
        for (const auto& pe : sections[name]) {
          prefix.push_back(pe.edge);
          try {
            Topology(sc.x0.size(), prefix);
          } catch (const Error& inner) {
            throw ParseError(ErrorKind::ValidationError, pe.line, inner.what());
          }
        }
        throw ParseError(ErrorKind::ValidationError, 0, e.what());
      }
    }
    if (sc.schedule) {
      for (const auto& p : sc.schedule->phases)
        if (!sc.topologies.contains(p.topology_id))
          throw ParseError(ErrorKind::ValidationError, line_of("schedule"),
                           "unknown topology '" + p.topology_id + "'");
    }
    validate(sc);
    return sc;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    std::size_t ln = 0;
    if (e.kind() == ErrorKind::AlphaOutOfRange) ln = line_of("alpha");
    throw ParseError(ErrorKind::ValidationError, ln, e.what());
  }
}

inline Scenario parse_scenario(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

/// Canonical text form; parse_scenario(render_scenario(s)) reproduces s.
inline std::string render_scenario(const Scenario& sc) {
  using detail::shortest;
  std::ostringstream out;
  out << "protocol = " << to_string(sc.protocol.kind()) << '\n';
  out << "alpha = " << shortest(sc.protocol.alpha()) << '\n';
  out << "x0 = [";
  for (std::size_t i = 0; i < sc.x0.size(); ++i) out << (i ? ", " : "") << shortest(sc.x0[i]);
  out << "]\n";
  out << "dt = " << shortest(sc.dt) << '\n';
  out << "t_max = " << shortest(sc.t_max) << '\n';
  out << "agree_tol = " << shortest(sc.agree_tol) << '\n';
  out << "record_every = " << sc.record_every << '\n';
  if (sc.schedule) {
    out << "schedule = ";
    for (std::size_t i = 0; i < sc.schedule->phases.size(); ++i) {
      const auto& p = sc.schedule->phases[i];
      out << (i ? ", " : "") << p.topology_id << ':' << shortest(p.dwell);
    }
    if (sc.schedule->cyclic) out << ", cyclic";
    out << '\n';
  }
  for (const auto& [name, t] : sc.topologies) {
    out << "\n[topology." << name << "]\n";
    for (const auto& e : t.edges())
      out << "edge " << e.i << ' ' << e.j << ' ' << shortest(e.weight) << '\n';
  }
  return out.str();
}

inline bool same_content(const Scenario& a, const Scenario& b) {
  if (!(a.protocol == b.protocol && a.schedule == b.schedule && a.x0 == b.x0 && a.dt == b.dt &&
        a.t_max == b.t_max && a.agree_tol == b.agree_tol && a.record_every == b.record_every))
    return false;
  if (a.topologies.size() != b.topologies.size()) return false;
  for (const auto& [name, t] : a.topologies) {
    auto it = b.topologies.find(name);
    if (it == b.topologies.end() || !(it->second == t)) return false;
  }
  return true;
}

}  // namespace ftc

#endif  // FTC_SCENARIO_IO_HPP
