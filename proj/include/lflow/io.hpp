#ifndef LFLOW_IO_HPP
#define LFLOW_IO_HPP

// Graph file format:
//   # comment lines anywhere
//   n m
//   u v          (m lines, 0 <= u < v < n)
//   names        (optional section)
//   i name       (one line per named vertex)

#include "lflow/errors.hpp"
#include "lflow/graph.hpp"
#include "lflow/rational.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lflow::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

struct GraphFile {
  Graph graph;
  std::map<Vertex, std::string> names;
};

namespace detail {

inline bool blank_or_comment(const std::string& s) {
  auto p = s.find_first_not_of(" \t\r");
  return p == std::string::npos || s[p] == '#';
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline long parse_count(const std::string& tok, int line, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected an integer for ") + what + ", got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, std::string("expected an integer for ") + what + ", got '" + tok + "'");
  return v;
}

}  // namespace detail

inline GraphFile read_graph(std::istream& in) {
  std::string text;
  int line_no = 0;
  auto next_line = [&](std::vector<std::string>& toks) {
    while (std::getline(in, text)) {
      ++line_no;
      if (detail::blank_or_comment(text)) continue;
      toks = detail::split_ws(text);
      return true;
    }
    return false;
  };
  std::vector<std::string> toks;
  if (!next_line(toks)) throw ParseError(0, "empty graph file: missing 'n m' header");
  if (toks.size() != 2) throw ParseError(line_no, "header must be 'n m'");
  const long n = detail::parse_count(toks[0], line_no, "n");
  const long m = detail::parse_count(toks[1], line_no, "m");
  if (n < 0 || m < 0) throw ParseError(line_no, "n and m must be nonnegative");
  if (m > n * (n - 1) / 2) throw ParseError(line_no, "m exceeds n(n-1)/2 for a simple graph");
  std::vector<Edge> edges;
  std::map<std::pair<long, long>, int> first_seen;
  for (long i = 0; i < m; ++i) {
    if (!next_line(toks)) throw ParseError(line_no, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    if (toks.size() != 2) throw ParseError(line_no, "edge line must be 'u v'");
    const long u = detail::parse_count(toks[0], line_no, "u");
    const long v = detail::parse_count(toks[1], line_no, "v");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line_no, "endpoint out of range 0.." + std::to_string(n - 1));
    if (u == v) throw ParseError(line_no, "loop at vertex " + std::to_string(u));
    if (u > v) throw ParseError(line_no, "edge must be written with u < v");
    auto [it, fresh] = first_seen.emplace(std::pair{u, v}, line_no);
    if (!fresh)
      throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v) + " (first on line " +
                                    std::to_string(it->second) + ")");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  GraphFile out;
  out.graph = Graph(static_cast<int>(n), std::move(edges));
  if (!next_line(toks)) return out;
  if (toks.size() != 1 || toks[0] != "names") throw ParseError(line_no, "unexpected content after the edge list");
  while (next_line(toks)) {
    if (toks.size() < 2) throw ParseError(line_no, "name line must be 'i name'");
    const long v = detail::parse_count(toks[0], line_no, "vertex");
    if (v < 0 || v >= n) throw ParseError(line_no, "named vertex out of range");
    std::string name = toks[1];
    for (std::size_t k = 2; k < toks.size(); ++k) name += " " + toks[k];
    if (!out.names.emplace(static_cast<Vertex>(v), name).second)
      throw ParseError(line_no, "vertex " + std::to_string(v) + " named twice");
  }
  return out;
}

inline GraphFile parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g, const std::map<Vertex, std::string>& names = {},
                        const std::string& comment = {}) {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << g.n() << " " << g.m() << "\n";
  for (const auto& e : g.edges()) out << e.u << " " << e.v << "\n";
  if (!names.empty()) {
    out << "names\n";
    for (const auto& [v, name] : names) out << v << " " << name << "\n";
  }
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

/// Whitespace-separated rationals, '#' starting a comment in any line.
inline std::vector<Rational> read_rationals(std::istream& in) {
  std::vector<Rational> out;
  std::string text;
  int line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    for (const auto& tok : detail::split_ws(text)) {
      try {
        out.push_back(parse_rational(tok));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    }
  }
  return out;
}

}  // namespace lflow::io

#endif  // LFLOW_IO_HPP
