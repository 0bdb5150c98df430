#pragma once

// Plain-text edge lists:
//
//   # comment (anywhere on a line)
//   n 5          required header, before any edge
//   0 1          unit weight
//   0 2 2.5      explicit weight
//
// Vertex ids are 0-based. The canonical writer emits the header followed by
// edges sorted lexicographically, omitting weights when all of them are 1.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lapbounds/graph.hpp"

namespace lapbounds {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  return value;
}

inline double parse_weight(std::string_view tok, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "invalid weight '" + std::string(tok) + "'");
  return value;
}

}  // namespace detail

/// Parses an edge list. Every failure is a ParseError naming the offending
/// line; no partially built graph escapes.
inline WeightedGraph parse_edge_list(std::istream& in) {
  std::optional<std::size_t> n;
  std::vector<WeightedEdge> edges;
  std::map<std::pair<Vertex, Vertex>, std::size_t> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text(raw);
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    const auto tok = detail::split_ws(text);
    if (tok.empty()) continue;
    if (tok[0] == "n") {
      if (n) throw ParseError(line, "duplicate header");
      if (tok.size() != 2) throw ParseError(line, "header must read 'n <count>'");
      n = detail::parse_count(tok[1], line, "vertex count");
      if (*n == 0) throw ParseError(line, "vertex count must be >= 1");
      continue;
    }
    if (!n) throw ParseError(line, "edge before header 'n <count>'");
    if (tok.size() < 2 || tok.size() > 3) throw ParseError(line, "expected 'i j [w]'");
    const Vertex u = detail::parse_count(tok[0], line, "vertex id");
    const Vertex v = detail::parse_count(tok[1], line, "vertex id");
    const double w = tok.size() == 3 ? detail::parse_weight(tok[2], line) : 1.0;
    if (u >= *n || v >= *n) throw ParseError(line, "vertex id out of range [0, " + std::to_string(*n) + ")");
    if (u == v) throw ParseError(line, "self-loop at vertex " + std::to_string(u));
    if (!std::isfinite(w) || w <= 0.0) throw ParseError(line, "weight must be positive and finite");
    const auto key = std::minmax(u, v);
    if (auto [it, fresh] = seen.emplace(key, line); !fresh)
      throw ParseError(line, "duplicate edge (first seen on line " + std::to_string(it->second) + ")");
    edges.push_back({u, v, w});
  }
  if (!n) throw ParseError(line == 0 ? 1 : line, "missing header 'n <count>'");
  try {
    return WeightedGraph(*n, std::move(edges));
  } catch (const GraphError& e) {
    throw ParseError(line, e.what());
  }
}

inline WeightedGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "n " << g.order() << '\n';
  const bool weights = !g.unit_weights();
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (weights) out << ' ' << format_real(e.weight);
    out << '\n';
  }
}

inline std::string to_edge_list(const WeightedGraph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

}  // namespace lapbounds
