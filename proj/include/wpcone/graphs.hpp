// Copyright 2026 The wpcone Authors
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

// Simple graphs, joins and complements, induced P4/C4 detection, cograph
// recognition, and membership in the class G generated from a point by
// disjoint union and coning.

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wpcone/error.hpp"

namespace wpcone {

using VertexMask = std::uint64_t;

inline VertexMask bit(std::size_t v) { return VertexMask{1} << v; }

/// Undirected loop-free graph on at most 64 labelled vertices.
class SimpleGraph {
 public:
  static constexpr std::size_t kMaxVertices = 64;

  SimpleGraph() = default;

  explicit SimpleGraph(std::vector<std::string> names,
                       const std::vector<std::pair<std::size_t, std::size_t>>& edges = {})
      : names_(std::move(names)), adjacency_(names_.size(), 0) {
    if (names_.size() > kMaxVertices) throw Error("graph has more than 64 vertices");
    std::map<std::string, int> seen;
    for (const auto& n : names_) {
      if (n.empty()) throw Error("empty vertex name");
      if (seen[n]++ != 0) throw Error("duplicate vertex name '" + n + "'");
    }
    for (auto [u, v] : edges) {
      if (u >= size() || v >= size()) throw Error("edge endpoint out of range");
      if (u == v) throw Error("loop at vertex '" + names_[u] + "'");
      adjacency_[u] |= bit(v);
      adjacency_[v] |= bit(u);
    }
  }

  /// Graph on vertices v0..v{n-1}; bit k of `edge_bits` selects the k-th
  /// pair in the order (0,1),(0,2),...,(0,n-1),(1,2),...
  static SimpleGraph from_edge_bits(std::size_t n, std::uint64_t edge_bits) {
    SimpleGraph g;
    g.names_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) g.names_.push_back("v" + std::to_string(i));
    g.adjacency_.assign(n, 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++k) {
        if ((edge_bits >> k) & 1U) {
          g.adjacency_[i] |= bit(j);
          g.adjacency_[j] |= bit(i);
        }
      }
    }
    return g;
  }

  static SimpleGraph from_adjacency(std::vector<std::string> names, std::vector<VertexMask> rows) {
    SimpleGraph g(std::move(names));
    if (rows.size() != g.size()) throw Error("adjacency size mismatch");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i] & bit(i)) throw Error("loop in adjacency");
      if (g.size() < 64 && (rows[i] >> g.size()) != 0) throw Error("adjacency out of range");
      for (std::size_t j = 0; j < rows.size(); ++j) {
        if (((rows[i] >> j) & 1U) != ((rows[j] >> i) & 1U)) throw Error("adjacency not symmetric");
      }
    }
    g.adjacency_ = std::move(rows);
    return g;
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t v) const { return names_.at(v); }
  VertexMask neighbours(std::size_t v) const { return adjacency_[v]; }
  const std::vector<VertexMask>& adjacency() const { return adjacency_; }
  bool adjacent(std::size_t u, std::size_t v) const { return (adjacency_[u] >> v) & 1U; }
  VertexMask all() const { return size() == 64 ? ~VertexMask{0} : bit(size()) - 1; }

  std::optional<std::size_t> index_of(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == n) return i;
    }
    return std::nullopt;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = i + 1; j < size(); ++j) {
        if (adjacent(i, j)) out.emplace_back(i, j);
      }
    }
    return out;
  }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.names_ == b.names_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<VertexMask> adjacency_;
};

inline SimpleGraph complement(const SimpleGraph& g) {
  std::vector<VertexMask> rows(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) rows[v] = g.all() & ~g.neighbours(v) & ~bit(v);
  return SimpleGraph::from_adjacency(g.names(), std::move(rows));
}

inline SimpleGraph induced_subgraph(const SimpleGraph& g, VertexMask keep) {
  std::vector<std::size_t> vertices;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (keep & bit(v)) vertices.push_back(v);
  }
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    names.push_back(g.name(vertices[i]));
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.adjacent(vertices[i], vertices[j])) edges.emplace_back(i, j);
    }
  }
  return SimpleGraph(std::move(names), edges);
}

/// Connected components of the subgraph induced on `within`, ordered by
/// their smallest vertex. `rows` is the adjacency to use (a graph's or its
/// complement's).
inline std::vector<VertexMask> components(const std::vector<VertexMask>& rows, VertexMask within) {
  std::vector<VertexMask> out;
  VertexMask left = within;
  while (left != 0) {
    VertexMask comp = left & (~left + 1);
    VertexMask frontier = comp;
    while (frontier != 0) {
      auto v = static_cast<std::size_t>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      VertexMask fresh = rows[v] & within & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

inline std::vector<VertexMask> complement_rows(const SimpleGraph& g) {
  std::vector<VertexMask> rows(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) rows[v] = g.all() & ~g.neighbours(v) & ~bit(v);
  return rows;
}

/// If g is a join J ∗ K, returns J (the complement component containing the
/// first vertex) and K (everything else) as induced subgraphs.
inline std::optional<std::pair<SimpleGraph, SimpleGraph>> join_decompose(const SimpleGraph& g) {
  if (g.size() < 2) return std::nullopt;
  auto comps = components(complement_rows(g), g.all());
  if (comps.size() < 2) return std::nullopt;
  VertexMask j = comps.front();
  return std::pair{induced_subgraph(g, j), induced_subgraph(g, g.all() & ~j)};
}

// ---------------------------------------------------------------------------
// Forbidden induced subgraphs

enum class Pattern { P4, C4 };

inline const char* to_string(Pattern p) { return p == Pattern::P4 ? "P4" : "C4"; }

struct ForbiddenWitness {
  Pattern kind;
  /// Path order a-b-c-d for P4, cyclic order for C4.
  std::array<std::size_t, 4> vertices;

  friend bool operator==(const ForbiddenWitness&, const ForbiddenWitness&) = default;
};

namespace detail {

inline std::optional<ForbiddenWitness> classify_quad(const SimpleGraph& g,
                                                     const std::array<std::size_t, 4>& q,
                                                     Pattern pattern) {
  std::array<int, 4> degree{};
  int edges = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (g.adjacent(q[i], q[j])) {
        ++edges;
        ++degree[i];
        ++degree[j];
      }
    }
  }
  auto walk = [&](int from) {
    std::array<std::size_t, 4> order{};
    std::array<bool, 4> used{};
    int cur = from;
    for (int step = 0; step < 4; ++step) {
      order[step] = q[cur];
      used[cur] = true;
      for (int nxt = 0; nxt < 4; ++nxt) {
        if (!used[nxt] && g.adjacent(q[cur], q[nxt])) {
          cur = nxt;
          break;
        }
      }
    }
    return order;
  };
  if (pattern == Pattern::P4 && edges == 3) {
    // Three edges on four vertices form a path iff exactly two vertices have degree 1.
    int ends = 0;
    int first_end = -1;
    for (int i = 0; i < 4; ++i) {
      if (degree[i] == 1) {
        ++ends;
        if (first_end < 0) first_end = i;
      }
    }
    if (ends == 2) return ForbiddenWitness{Pattern::P4, walk(first_end)};
  }
  if (pattern == Pattern::C4 && edges == 4 && degree == std::array<int, 4>{2, 2, 2, 2}) {
    return ForbiddenWitness{Pattern::C4, walk(0)};
  }
  return std::nullopt;
}

}  // namespace detail

/// First induced copy of `pattern` among the vertices in `within`, searching
/// 4-subsets in lexicographic order.
inline std::optional<ForbiddenWitness> find_induced(const SimpleGraph& g, Pattern pattern,
                                                    VertexMask within) {
  std::vector<std::size_t> vs;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (within & bit(v)) vs.push_back(v);
  }
  const std::size_t n = vs.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        for (std::size_t d = c + 1; d < n; ++d) {
          if (auto w = detail::classify_quad(g, {vs[a], vs[b], vs[c], vs[d]}, pattern)) return w;
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<ForbiddenWitness> find_induced(const SimpleGraph& g, Pattern pattern) {
  return find_induced(g, pattern, g.all());
}

inline bool is_cograph(const SimpleGraph& g) { return !find_induced(g, Pattern::P4).has_value(); }

// ---------------------------------------------------------------------------
// Class G

/// Build tree: leaves are single vertices, internal nodes are disjoint
/// unions or cones with a named apex.
struct BuildNode {
  enum class Kind { Leaf, DisjointUnion, Cone };
  Kind kind = Kind::Leaf;
  std::size_t vertex = 0;  // leaf vertex or cone apex
  std::vector<BuildNode> children;
};

struct ClassGCertificate {
  BuildNode root;
};

using ClassGResult = std::variant<ClassGCertificate, ForbiddenWitness>;

namespace detail {

inline std::optional<BuildNode> build_class_g(const SimpleGraph& g, VertexMask s,
                                              VertexMask& failed_at) {
  if (std::popcount(s) == 1) {
    return BuildNode{BuildNode::Kind::Leaf, static_cast<std::size_t>(std::countr_zero(s)), {}};
  }
  auto comps = components(g.adjacency(), s);
  if (comps.size() > 1) {
    BuildNode node{BuildNode::Kind::DisjointUnion, 0, {}};
    for (auto c : comps) {
      auto child = build_class_g(g, c, failed_at);
      if (!child) return std::nullopt;
      node.children.push_back(std::move(*child));
    }
    return node;
  }
  for (VertexMask rest = s; rest != 0; rest &= rest - 1) {
    auto v = static_cast<std::size_t>(std::countr_zero(rest));
    VertexMask others = s & ~bit(v);
    if ((g.neighbours(v) & others) == others) {
      auto child = build_class_g(g, others, failed_at);
      if (!child) return std::nullopt;
      return BuildNode{BuildNode::Kind::Cone, v, {std::move(*child)}};
    }
  }
  failed_at = s;
  return std::nullopt;
}

/// Adds the subtree's edges to `rows`; returns the subtree's vertex set.
/// `used` collects every vertex placed so far, to reject repeats.
inline VertexMask replay(const BuildNode& node, std::vector<VertexMask>& rows, VertexMask& used) {
  switch (node.kind) {
    case BuildNode::Kind::Leaf:
      if (node.vertex >= rows.size()) throw Error("certificate vertex out of range");
      if (used & bit(node.vertex)) throw Error("certificate repeats a vertex");
      used |= bit(node.vertex);
      return bit(node.vertex);
    case BuildNode::Kind::DisjointUnion: {
      VertexMask mine = 0;
      for (const auto& c : node.children) mine |= replay(c, rows, used);
      return mine;
    }
    case BuildNode::Kind::Cone: {
      if (node.children.size() != 1) throw Error("cone node needs one child");
      if (node.vertex >= rows.size()) throw Error("certificate vertex out of range");
      VertexMask base = replay(node.children.front(), rows, used);
      if (used & bit(node.vertex)) throw Error("certificate repeats a vertex");
      rows[node.vertex] |= base;
      for (VertexMask rest = base; rest != 0; rest &= rest - 1) {
        rows[static_cast<std::size_t>(std::countr_zero(rest))] |= bit(node.vertex);
      }
      used |= bit(node.vertex);
      return base | bit(node.vertex);
    }
  }
  return 0;
}

}  // namespace detail

/// Decides membership in class G. Connected members must be cones, so the
/// recursion removes the first universal vertex; when a connected piece has
/// none, an induced P4 (preferred) or C4 inside that piece is returned.
inline ClassGResult class_g_membership(const SimpleGraph& g) {
  if (g.size() == 0) throw Error("class G membership needs a nonempty graph");
  VertexMask failed_at = 0;
  if (auto tree = detail::build_class_g(g, g.all(), failed_at)) return ClassGCertificate{*tree};
  if (auto w = find_induced(g, Pattern::P4, failed_at)) return *w;
  if (auto w = find_induced(g, Pattern::C4, failed_at)) return *w;
  throw Error("connected graph without a universal vertex has no induced P4 or C4");
}

/// Rebuilds the graph described by a certificate, with g's vertex names.
inline SimpleGraph replay_certificate(const ClassGCertificate& cert, const SimpleGraph& g) {
  std::vector<VertexMask> rows(g.size(), 0);
  VertexMask vertices = 0;
  detail::replay(cert.root, rows, vertices);
  if (vertices != g.all()) throw Error("certificate does not cover every vertex");
  return SimpleGraph::from_adjacency(g.names(), std::move(rows));
}

struct RaagReport {
  bool in_class_g = false;
  std::optional<ClassGCertificate> certificate;
  std::optional<ForbiddenWitness> witness;
  /// Which non-MCF subgroup the witness exhibits: "A(P4)" or "F2xF2".
  std::string obstruction;
};

inline RaagReport classify_raag(const SimpleGraph& g) {
  RaagReport r;
  auto result = class_g_membership(g);
  if (auto* cert = std::get_if<ClassGCertificate>(&result)) {
    r.in_class_g = true;
    r.certificate = *cert;
  } else {
    r.witness = std::get<ForbiddenWitness>(result);
    r.obstruction = r.witness->kind == Pattern::P4 ? "A(P4)" : "F2xF2";
  }
  return r;
}

// ---------------------------------------------------------------------------
// I/O

inline nlohmann::json to_json(const SimpleGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.name(u), g.name(v)});
  return {{"vertices", g.names()}, {"edges", edges}};
}

inline SimpleGraph graph_from_json(const nlohmann::json& j) {
  auto names = j.at("vertices").get<std::vector<std::string>>();
  SimpleGraph probe(names);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair of vertex names");
    auto u = probe.index_of(e.at(0).get<std::string>());
    auto v = probe.index_of(e.at(1).get<std::string>());
    if (!u || !v) throw ParseError("edge mentions an unknown vertex");
    edges.emplace_back(*u, *v);
  }
  return SimpleGraph(std::move(names), edges);
}

/// Plain text: one "u v" edge or a lone "u" vertex per line, '#' comments.
/// Vertices are numbered in order of first appearance.
inline SimpleGraph parse_edge_list(std::istream& in) {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto intern = [&](const std::string& n) {
    auto [it, fresh] = index.emplace(n, names.size());
    if (fresh) names.push_back(n);
    return it->second;
  };
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() > 2) throw ParseError("edge list line has more than two vertices: " + line);
    auto u = intern(tokens[0]);
    if (tokens.size() == 2) edges.emplace_back(u, intern(tokens[1]));
  }
  return SimpleGraph(std::move(names), edges);
}

inline SimpleGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '{') {
      return graph_from_json(nlohmann::json::parse(text));
    }
    std::istringstream is(text);
    return parse_edge_list(is);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed graph file '" + path + "': " + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("malformed graph file '" + path + "': " + e.what());
  }
}

inline nlohmann::json to_json(const BuildNode& node, const SimpleGraph& g) {
  switch (node.kind) {
    case BuildNode::Kind::Leaf:
      return {{"leaf", g.name(node.vertex)}};
    case BuildNode::Kind::DisjointUnion: {
      nlohmann::json parts = nlohmann::json::array();
      for (const auto& c : node.children) parts.push_back(to_json(c, g));
      return {{"disjoint_union", parts}};
    }
    case BuildNode::Kind::Cone:
      return {{"cone", {{"apex", g.name(node.vertex)}, {"base", to_json(node.children.front(), g)}}}};
  }
  return nullptr;
}

inline nlohmann::json to_json(const ForbiddenWitness& w, const SimpleGraph& g) {
  nlohmann::json vs = nlohmann::json::array();
  for (auto v : w.vertices) vs.push_back(g.name(v));
  return {{"kind", to_string(w.kind)}, {"vertices", vs}};
}

inline nlohmann::json to_json(const RaagReport& r, const SimpleGraph& g) {
  nlohmann::json j;
  if (r.in_class_g) {
    j["verdict"] = "InClassG";
    j["certificate"] = to_json(r.certificate->root, g);
    j["note"] = "graph lies in class G; no obstruction to an MCF word problem is known";
  } else {
    j["verdict"] = "NotMCF";
    j["witness"] = to_json(*r.witness, g);
    j["obstruction"] = r.obstruction;
    j["note"] = std::string("the induced ") + to_string(r.witness->kind) +
                " spans a subgroup isomorphic to " + r.obstruction +
                ", whose word problem is not MCF; MCF word problems pass to finitely "
                "generated subgroups";
  }
  return j;
}

}  // namespace wpcone
