#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "edgeconn/simple_graph.hpp"

namespace edgeconn {

enum class GraphFormat { Auto, EdgeList, Dimacs };
enum class ParseMode { Strict, Dedupe };

struct ParseResult {
  SimpleGraph graph;
  std::vector<std::string> labels;  // input name of each vertex
  std::size_t dropped_self_loops = 0;
  std::size_t dropped_duplicates = 0;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

class EdgeCollector {
 public:
  EdgeCollector(ParseMode mode) : mode_(mode) {}
  void add(VertexId u, VertexId v, std::size_t line, ParseResult& r) {
    if (u == v) {
      if (mode_ == ParseMode::Strict) throw ParseError(line, "self-loop");
      ++r.dropped_self_loops;
      return;
    }
    auto key = std::minmax(u, v);
    if (!seen_.insert({key.first, key.second}).second) {
      if (mode_ == ParseMode::Strict) throw ParseError(line, "duplicate edge");
      ++r.dropped_duplicates;
      return;
    }
    edges.push_back({u, v});
  }
  std::vector<Edge> edges;

 private:
  ParseMode mode_;
  std::set<std::pair<VertexId, VertexId>> seen_;
};

inline ParseResult parse_dimacs(std::istream& in, ParseMode mode) {
  ParseResult r;
  EdgeCollector edges(mode);
  std::string line;
  std::size_t lineno = 0, n = 0, declared_m = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c" || tok[0][0] == '#') continue;
    if (tok[0] == "p") {
      std::uint64_t a, b;
      if (header) throw ParseError(lineno, "second problem line");
      if (tok.size() != 4 || !parse_u64(tok[2], a) || !parse_u64(tok[3], b))
        throw ParseError(lineno, "expected 'p edge <n> <m>'");
      n = a;
      declared_m = b;
      header = true;
    } else if (tok[0] == "e") {
      std::uint64_t a, b;
      if (!header) throw ParseError(lineno, "edge before problem line");
      if (tok.size() != 3 || !parse_u64(tok[1], a) || !parse_u64(tok[2], b))
        throw ParseError(lineno, "expected 'e <u> <v>'");
      if (a < 1 || b < 1 || a > n || b > n) throw ParseError(lineno, "vertex id out of range");
      edges.add(static_cast<VertexId>(a - 1), static_cast<VertexId>(b - 1), lineno, r);
    } else {
      throw ParseError(lineno, "unexpected line");
    }
  }
  if (!header) throw ParseError(0, "missing problem line");
  if (mode == ParseMode::Strict && edges.edges.size() != declared_m)
    throw ParseError(0, "edge count does not match problem line");
  for (std::size_t v = 1; v <= n; ++v) r.labels.push_back(std::to_string(v));
  r.graph = SimpleGraph(n, std::move(edges.edges));
  return r;
}

inline ParseResult parse_edge_list(std::istream& in, ParseMode mode) {
  std::vector<std::pair<std::string, std::string>> raw;
  std::vector<std::size_t> raw_line;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    auto tok = split_ws(view);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError(lineno, "expected two vertex names");
    raw.emplace_back(std::string(tok[0]), std::string(tok[1]));
    raw_line.push_back(lineno);
  }
  // Integer names are numbered in numeric order, other names by first appearance.
  bool numeric = true;
  for (auto& [a, b] : raw) {
    std::uint64_t x;
    numeric = numeric && parse_u64(a, x) && parse_u64(b, x);
  }
  ParseResult r;
  std::unordered_map<std::string, VertexId> id;
  if (numeric) {
    std::map<std::uint64_t, std::string> names;
    for (auto& [a, b] : raw) {
      std::uint64_t x;
      parse_u64(a, x);
      names.emplace(x, a);
      parse_u64(b, x);
      names.emplace(x, b);
    }
    for (auto& [value, name] : names) {
      id.emplace(name, static_cast<VertexId>(r.labels.size()));
      r.labels.push_back(std::to_string(value));
    }
    // Spellings such as "01" and "1" name the same vertex.
    for (auto& [a, b] : raw) {
      for (std::string* s : {&a, &b}) {
        std::uint64_t x;
        parse_u64(*s, x);
        *s = names[x];
      }
    }
  } else {
    for (auto& [a, b] : raw) {
      for (const std::string& s : {a, b})
        if (id.emplace(s, static_cast<VertexId>(r.labels.size())).second) r.labels.push_back(s);
    }
  }
  EdgeCollector edges(mode);
  for (std::size_t i = 0; i < raw.size(); ++i) edges.add(id[raw[i].first], id[raw[i].second], raw_line[i], r);
  r.graph = SimpleGraph(r.labels.size(), std::move(edges.edges));
  return r;
}

inline bool looks_like_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto tok = split_ws(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    return tok[0] == "p" || tok[0] == "c" || tok[0] == "e";
  }
  return false;
}

}  // namespace detail

inline ParseResult parse_graph(const std::string& text, GraphFormat format = GraphFormat::Auto,
                               ParseMode mode = ParseMode::Strict) {
  if (format == GraphFormat::Auto) format = detail::looks_like_dimacs(text) ? GraphFormat::Dimacs : GraphFormat::EdgeList;
  std::istringstream in(text);
  return format == GraphFormat::Dimacs ? detail::parse_dimacs(in, mode) : detail::parse_edge_list(in, mode);
}

inline ParseResult read_graph_file(const std::string& path, GraphFormat format = GraphFormat::Auto,
                                   ParseMode mode = ParseMode::Strict) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  if (format == GraphFormat::Auto && (path.ends_with(".dimacs") || path.ends_with(".col")))
    format = GraphFormat::Dimacs;
  return parse_graph(buf.str(), format, mode);
}

inline std::string to_edge_list(const SimpleGraph& g) {
  std::ostringstream out;
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

}  // namespace edgeconn
