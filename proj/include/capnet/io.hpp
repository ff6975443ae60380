// Copyright 2026 The capnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text formats. '#' starts a comment; blank lines are ignored.
//
//   graph    n m, then m lines "a b cost capacity" (capacity may be "inf")
//   conncap  graph block whose edge lines end in a class tag C or U, then
//            "sink t" and any number of "source s r"
//   gst      graph block, "root r", "group v1 v2 ..." lines, and for the
//            demand variant "demand d" (one per group, in order) and
//            "nodecap v b" (unlisted nodes get 0)
//   up2p     graph block, then "charge v b" (unlisted nodes get 0)
//   stc      graph block, then an optional "root r"
//
// Solutions: "edges k e1 ... ek" or bare edge indices.

#ifndef CAPNET_IO_HPP_
#define CAPNET_IO_HPP_

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "capnet/capsndp.hpp"
#include "capnet/errors.hpp"
#include "capnet/graph.hpp"
#include "capnet/up2p.hpp"

namespace capnet {

namespace detail {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

inline std::int64_t to_int(const std::string& s, int line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, "expected an integer, got '" + s + "'");
  return v;
}

inline std::int64_t to_nonneg(const std::string& s, int line) {
  const std::int64_t v = to_int(s, line);
  if (v < 0) throw ParseError(line, "expected a nonnegative integer, got '" + s + "'");
  return v;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : lines_(tokenize(text)) {}

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next(const char* what) {
    if (done()) throw ParseError(last_line(), std::string("unexpected end of input, expected ") + what);
    return lines_[pos_++];
  }
  int last_line() const { return lines_.empty() ? 0 : lines_.back().number; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

inline void expect_arity(const Line& l, std::size_t k, const char* what) {
  if (l.tokens.size() != k)
    throw ParseError(l.number, std::string(what) + ": expected " + std::to_string(k) + " fields");
}

inline NodeId node_token(const std::string& s, int line, std::size_t n) {
  const std::int64_t v = to_nonneg(s, line);
  if (static_cast<std::size_t>(v) >= n) throw ParseError(line, "node " + s + " out of range");
  return static_cast<NodeId>(v);
}

// Graph block; `tags` receives the trailing class tag of each edge line when
// given.
inline Graph read_graph(Reader& r, std::vector<EdgeClass>* tags = nullptr) {
  const Line& head = r.next("graph header");
  expect_arity(head, 2, "graph header");
  const auto n = static_cast<std::size_t>(to_nonneg(head.tokens[0], head.number));
  const auto m = static_cast<std::size_t>(to_nonneg(head.tokens[1], head.number));
  Graph g(n);
  for (std::size_t i = 0; i < m; ++i) {
    const Line& l = r.next("edge line");
    expect_arity(l, tags ? 5 : 4, "edge line");
    const NodeId a = node_token(l.tokens[0], l.number, n);
    const NodeId b = node_token(l.tokens[1], l.number, n);
    const Cost cost = to_nonneg(l.tokens[2], l.number);
    const Capacity cap = l.tokens[3] == "inf" ? Capacity::infinite()
                                              : Capacity(to_nonneg(l.tokens[3], l.number));
    if (a == b) throw ParseError(l.number, "self-loop");
    g.add_edge(a, b, cost, cap);
    if (tags) {
      if (l.tokens[4] == "C") tags->push_back(EdgeClass::kCost);
      else if (l.tokens[4] == "U") tags->push_back(EdgeClass::kCapacity);
      else throw ParseError(l.number, "edge class must be C or U");
    }
  }
  return g;
}

inline void write_graph(std::ostream& out, const Graph& g,
                        const std::vector<EdgeClass>* tags = nullptr) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    out << ed.a << ' ' << ed.b << ' ' << ed.cost << ' ' << ed.capacity.to_string();
    if (tags) out << ' ' << ((*tags)[e] == EdgeClass::kCost ? 'C' : 'U');
    out << '\n';
  }
}

}  // namespace detail

inline Graph parse_graph(std::string_view text) {
  detail::Reader r(text);
  Graph g = detail::read_graph(r);
  if (!r.done()) throw ParseError(r.peek().number, "trailing content after graph");
  return g;
}

inline std::string emit_graph(const Graph& g) {
  std::ostringstream out;
  detail::write_graph(out, g);
  return out.str();
}

inline ConnCapSndpInstance parse_conncap(std::string_view text) {
  detail::Reader r(text);
  ConnCapSndpInstance inst;
  inst.graph = detail::read_graph(r, &inst.classes);
  bool have_sink = false;
  while (!r.done()) {
    const detail::Line& l = r.next("directive");
    const std::size_t n = inst.graph.node_count();
    if (l.tokens[0] == "sink") {
      detail::expect_arity(l, 2, "sink");
      if (have_sink) throw ParseError(l.number, "sink given twice");
      inst.sink = detail::node_token(l.tokens[1], l.number, n);
      have_sink = true;
    } else if (l.tokens[0] == "source") {
      detail::expect_arity(l, 3, "source");
      const NodeId s = detail::node_token(l.tokens[1], l.number, n);
      const std::int64_t req = detail::to_nonneg(l.tokens[2], l.number);
      if (req < 1) throw ParseError(l.number, "source requirement must be >= 1");
      inst.sources.push_back({s, req});
    } else {
      throw ParseError(l.number, "unknown directive '" + l.tokens[0] + "'");
    }
  }
  if (!have_sink) throw ParseError(r.last_line(), "missing sink line");
  try {
    inst.validate();
  } catch (const UsageError& e) {
    throw ParseError(r.last_line(), e.what());
  }
  return inst;
}

inline std::string emit_conncap(const ConnCapSndpInstance& inst) {
  std::ostringstream out;
  detail::write_graph(out, inst.graph, &inst.classes);
  out << "sink " << inst.sink << '\n';
  for (const Source& s : inst.sources) out << "source " << s.node << ' ' << s.requirement << '\n';
  return out.str();
}

// Parses both gst variants; demands and node capacities stay empty when the
// file has none.
inline GstDemandInstance parse_gst(std::string_view text) {
  detail::Reader r(text);
  GstDemandInstance inst;
  inst.gst.graph = detail::read_graph(r);
  const std::size_t n = inst.gst.graph.node_count();
  bool have_root = false, have_caps = false;
  std::vector<std::int64_t> caps(n, 0);
  while (!r.done()) {
    const detail::Line& l = r.next("directive");
    if (l.tokens[0] == "root") {
      detail::expect_arity(l, 2, "root");
      if (have_root) throw ParseError(l.number, "root given twice");
      inst.gst.root = detail::node_token(l.tokens[1], l.number, n);
      have_root = true;
    } else if (l.tokens[0] == "group") {
      if (l.tokens.size() < 2) throw ParseError(l.number, "empty group");
      std::vector<NodeId> g;
      for (std::size_t i = 1; i < l.tokens.size(); ++i)
        g.push_back(detail::node_token(l.tokens[i], l.number, n));
      inst.gst.groups.push_back(std::move(g));
    } else if (l.tokens[0] == "demand") {
      detail::expect_arity(l, 2, "demand");
      const std::int64_t d = detail::to_nonneg(l.tokens[1], l.number);
      if (d < 1) throw ParseError(l.number, "group demand must be >= 1");
      inst.demands.push_back(d);
    } else if (l.tokens[0] == "nodecap") {
      detail::expect_arity(l, 3, "nodecap");
      caps[detail::node_token(l.tokens[1], l.number, n)] = detail::to_nonneg(l.tokens[2], l.number);
      have_caps = true;
    } else {
      throw ParseError(l.number, "unknown directive '" + l.tokens[0] + "'");
    }
  }
  if (!have_root) throw ParseError(r.last_line(), "missing root line");
  if (!inst.demands.empty() && inst.demands.size() != inst.gst.groups.size())
    throw ParseError(r.last_line(), "need one demand line per group");
  if (!inst.demands.empty() || have_caps) inst.node_caps = std::move(caps);
  return inst;
}

inline std::string emit_gst(const GstDemandInstance& inst) {
  std::ostringstream out;
  detail::write_graph(out, inst.gst.graph);
  out << "root " << inst.gst.root << '\n';
  for (const auto& g : inst.gst.groups) {
    out << "group";
    for (NodeId v : g) out << ' ' << v;
    out << '\n';
  }
  for (auto d : inst.demands) out << "demand " << d << '\n';
  for (NodeId v = 0; v < inst.node_caps.size(); ++v)
    if (inst.node_caps[v] != 0) out << "nodecap " << v << ' ' << inst.node_caps[v] << '\n';
  return out.str();
}

inline std::string emit_gst(const GstInstance& gst) { return emit_gst(GstDemandInstance{gst, {}, {}}); }

inline Up2pInstance parse_up2p(std::string_view text) {
  detail::Reader r(text);
  Up2pInstance inst;
  inst.graph = detail::read_graph(r);
  inst.charges.assign(inst.graph.node_count(), 0);
  std::vector<bool> seen(inst.graph.node_count(), false);
  while (!r.done()) {
    const detail::Line& l = r.next("directive");
    if (l.tokens[0] != "charge") throw ParseError(l.number, "unknown directive '" + l.tokens[0] + "'");
    detail::expect_arity(l, 3, "charge");
    const NodeId v = detail::node_token(l.tokens[1], l.number, inst.graph.node_count());
    if (seen[v]) throw ParseError(l.number, "charge given twice for node " + l.tokens[1]);
    seen[v] = true;
    inst.charges[v] = detail::to_int(l.tokens[2], l.number);
  }
  return inst;
}

inline std::string emit_up2p(const Up2pInstance& inst) {
  std::ostringstream out;
  detail::write_graph(out, inst.graph);
  for (NodeId v = 0; v < inst.charges.size(); ++v)
    if (inst.charges[v] != 0) out << "charge " << v << ' ' << inst.charges[v] << '\n';
  return out.str();
}

struct StcInstance {
  Graph graph;
  std::optional<NodeId> root;
};

inline StcInstance parse_stc(std::string_view text) {
  detail::Reader r(text);
  StcInstance inst{detail::read_graph(r), std::nullopt};
  while (!r.done()) {
    const detail::Line& l = r.next("directive");
    if (l.tokens[0] != "root") throw ParseError(l.number, "unknown directive '" + l.tokens[0] + "'");
    detail::expect_arity(l, 2, "root");
    if (inst.root) throw ParseError(l.number, "root given twice");
    inst.root = detail::node_token(l.tokens[1], l.number, inst.graph.node_count());
  }
  return inst;
}

// Either an "edges k ..." line or bare indices, possibly over several lines.
inline EdgeSubset parse_solution(std::string_view text, std::size_t edge_count) {
  std::vector<EdgeId> ids;
  for (const detail::Line& l : detail::tokenize(text)) {
    std::size_t from = 0;
    if (l.tokens[0] == "edges") {
      if (l.tokens.size() < 2) throw ParseError(l.number, "edges: missing count");
      const auto k = static_cast<std::size_t>(detail::to_nonneg(l.tokens[1], l.number));
      if (l.tokens.size() != k + 2) throw ParseError(l.number, "edges: count does not match");
      from = 2;
    } else if (l.tokens[0] == "cost" || l.tokens[0] == "verdict" || l.tokens[0] == "solver" ||
               l.tokens[0] == "seed") {
      continue;  // lines of solver output
    }
    for (std::size_t i = from; i < l.tokens.size(); ++i) {
      const auto e = static_cast<std::size_t>(detail::to_nonneg(l.tokens[i], l.number));
      if (e >= edge_count) throw ParseError(l.number, "edge " + l.tokens[i] + " out of range");
      ids.push_back(e);
    }
  }
  return EdgeSubset(std::move(ids));
}

inline std::string emit_solution(const EdgeSubset& s) {
  std::string out = "edges " + std::to_string(s.size());
  for (EdgeId e : s) out += ' ' + std::to_string(e);
  return out + '\n';
}

struct RunReport {
  std::string instance;
  std::string solver;
  std::uint64_t seed = 0;
  double epsilon = 1.0;
  Cost cost = 0;
  std::optional<Cost> opt;
  std::optional<std::int64_t> millis;
  bool feasible = false;

  // cost / opt, present only when opt is known and positive.
  std::optional<double> ratio() const {
    if (!opt || *opt <= 0) return std::nullopt;
    return static_cast<double>(cost) / static_cast<double>(*opt);
  }

  static std::string csv_header() {
    return "instance,solver,seed,epsilon,cost,opt,ratio,millis,feasible";
  }
  std::string csv() const {
    char eps[32], rat[32] = "";
    std::snprintf(eps, sizeof eps, "%g", epsilon);
    if (auto r = ratio()) std::snprintf(rat, sizeof rat, "%.6f", *r);
    std::string out = instance + ',' + solver + ',' + std::to_string(seed) + ',' + eps + ',' +
                      std::to_string(cost) + ',';
    if (opt) out += std::to_string(*opt);
    out += ',';
    out += rat;
    out += ',';
    if (millis) out += std::to_string(*millis);
    out += ',';
    out += feasible ? "true" : "false";
    return out;
  }
};

}  // namespace capnet

#endif  // CAPNET_IO_HPP_
