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

// Schreier diagrams of a finite-index subgroup, given by the permutation
// action of the supergroup's generators on cosets, and the transducer that
// carries the subgroup's word problem onto the supergroup's.

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wpcone/automata.hpp"
#include "wpcone/error.hpp"
#include "wpcone/group_oracle.hpp"
#include "wpcone/words.hpp"

namespace wpcone {

/// Right action of the generators of Δ on cosets {0..degree-1}; coset 0 is
/// the subgroup itself. perms[i] is the permutation of the i-th positive letter.
struct CosetAction {
  AlphabetPtr alphabet;
  std::size_t degree = 0;
  std::vector<std::vector<std::size_t>> perms;

  CosetAction(AlphabetPtr a, std::size_t deg, std::vector<std::vector<std::size_t>> p)
      : alphabet(std::move(a)), degree(deg), perms(std::move(p)) {
    if (degree == 0) throw Error("coset action needs at least one coset");
    if (perms.size() != alphabet->positive_letters().size()) {
      throw Error("coset action needs one permutation per generator");
    }
    for (const auto& perm : perms) {
      if (perm.size() != degree) throw Error("permutation has the wrong degree");
      std::vector<bool> hit(degree, false);
      for (auto x : perm) {
        if (x >= degree || hit[x]) throw Error("coset action entry is not a permutation");
        hit[x] = true;
      }
    }
  }

  /// Coset reached from `coset` by reading letter l (inverse letters act by
  /// inverse permutations).
  std::size_t act(std::size_t coset, Letter l) const {
    auto positives = alphabet->positive_letters();
    bool positive = alphabet->is_positive(l);
    Letter p = positive ? l : alphabet->inverse(l);
    auto idx = static_cast<std::size_t>(std::find(positives.begin(), positives.end(), p) - positives.begin());
    const auto& perm = perms[idx];
    if (positive) return perm[coset];
    return static_cast<std::size_t>(std::find(perm.begin(), perm.end(), coset) - perm.begin());
  }
};

struct DiagramEdge {
  std::size_t source;
  Letter letter;  // positive letter of Δ
  std::size_t target;
  friend bool operator==(const DiagramEdge&, const DiagramEdge&) = default;
};

struct SchreierDiagram {
  AlphabetPtr alphabet;
  std::size_t vertices = 0;
  /// Ordered by source vertex, then letter.
  std::vector<DiagramEdge> edges;

  /// The diagram as an automaton: each edge also readable backwards with the
  /// inverse letter; start and sole accepting vertex 0.
  Fsa as_automaton() const {
    std::vector<FsaEdge> fsa_edges;
    for (const auto& e : edges) {
      fsa_edges.push_back({e.source, Word(alphabet, {e.letter}), e.target});
      fsa_edges.push_back({e.target, Word(alphabet, {alphabet->inverse(e.letter)}), e.source});
    }
    return Fsa(alphabet, vertices, 0, {0}, std::move(fsa_edges));
  }
};

inline SchreierDiagram build_diagram(const CosetAction& action) {
  SchreierDiagram d{action.alphabet, action.degree, {}};
  auto positives = action.alphabet->positive_letters();
  for (std::size_t v = 0; v < action.degree; ++v) {
    for (std::size_t i = 0; i < positives.size(); ++i) {
      d.edges.push_back({v, positives[i], action.perms[i][v]});
    }
  }
  return d;
}

/// Indices into d.edges of a BFS spanning tree rooted at 0. Vertices are
/// expanded in BFS order, out-edges in letter order; a vertex is claimed by
/// the first edge that reaches it.
inline std::vector<std::size_t> spanning_tree(const SchreierDiagram& d) {
  std::vector<bool> reached(d.vertices, false);
  std::vector<std::size_t> tree;
  std::deque<std::size_t> queue{0};
  reached[0] = true;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
      const auto& e = d.edges[i];
      if (e.source != v || reached[e.target]) continue;
      reached[e.target] = true;
      tree.push_back(i);
      queue.push_back(e.target);
    }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
    throw Error("coset action is not transitive; the diagram is disconnected");
  }
  return tree;
}

struct SchreierGenerator {
  std::size_t edge;  // index into the diagram's edges
  Word word;         // u a v^-1
  std::string name;  // fresh letter b0, b1, ...
};

namespace detail {

// Label of the tree path from the root to each vertex.
inline std::vector<std::vector<Letter>> tree_paths(const SchreierDiagram& d,
                                                   const std::vector<std::size_t>& tree) {
  std::vector<std::optional<std::vector<Letter>>> path(d.vertices);
  path[0] = std::vector<Letter>{};
  // Tree edges point away from the root and were recorded in BFS order.
  for (auto i : tree) {
    const auto& e = d.edges[i];
    auto p = *path[e.source];
    p.push_back(e.letter);
    path[e.target] = std::move(p);
  }
  std::vector<std::vector<Letter>> out;
  for (auto& p : path) {
    if (!p) throw Error("spanning tree does not reach every vertex");
    out.push_back(std::move(*p));
  }
  return out;
}

}  // namespace detail

/// One generator u·a·v⁻¹ per non-tree edge, in edge order.
inline std::vector<SchreierGenerator> schreier_generators(const SchreierDiagram& d,
                                                          const std::vector<std::size_t>& tree) {
  auto paths = detail::tree_paths(d, tree);
  std::set<std::size_t> in_tree(tree.begin(), tree.end());
  std::vector<SchreierGenerator> gens;
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    if (in_tree.count(i)) continue;
    const auto& e = d.edges[i];
    std::vector<Letter> w = paths[e.source];
    w.push_back(e.letter);
    auto v_inv = inverse_letters(*d.alphabet, paths[e.target]);
    w.insert(w.end(), v_inv.begin(), v_inv.end());
    gens.push_back({i, Word(d.alphabet, std::move(w)), "b" + std::to_string(gens.size())});
  }
  return gens;
}

/// Alphabet of the fresh letters b_e and their inverses.
inline AlphabetPtr generator_alphabet(const std::vector<SchreierGenerator>& gens) {
  std::vector<std::string> names;
  for (const auto& g : gens) names.push_back(g.name);
  if (names.empty()) throw Error("subgroup has no Schreier generators");
  return SymmetricAlphabet::make(names);
}

/// Substitution b_e ↦ Schreier word, used to pull the supergroup oracle back.
inline MonoidHom generator_substitution(const std::vector<SchreierGenerator>& gens,
                                        const AlphabetPtr& super_alphabet) {
  auto source = generator_alphabet(gens);
  std::map<std::string, Word> images;
  for (const auto& g : gens) images.emplace(g.name, g.word);
  return MonoidHom::from_generator_images(source, super_alphabet, images);
}

/// Tree edges become (ε, a), the edge of generator b_e becomes (b_e, a);
/// every edge also gets a reverse edge with both coordinates inverted.
inline Transducer build_transducer(const SchreierDiagram& d, const std::vector<std::size_t>& tree,
                                   const std::vector<SchreierGenerator>& gens) {
  auto first = generator_alphabet(gens);
  std::map<std::size_t, Letter> edge_letter;
  for (std::size_t i = 0; i < gens.size(); ++i) edge_letter[gens[i].edge] = static_cast<Letter>(2 * i);
  std::set<std::size_t> in_tree(tree.begin(), tree.end());
  std::vector<TransducerEdge> edges;
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    Word fwd_first(first);
    Word back_first(first);
    if (!in_tree.count(i)) {
      auto it = edge_letter.find(i);
      if (it == edge_letter.end()) throw Error("non-tree edge without a generator");
      fwd_first = Word(first, {it->second});
      back_first = Word(first, {first->inverse(it->second)});
    }
    edges.push_back({e.source, fwd_first, Word(d.alphabet, {e.letter}), e.target});
    edges.push_back({e.target, back_first, Word(d.alphabet, {d.alphabet->inverse(e.letter)}), e.source});
  }
  return Transducer(first, d.alphabet, d.vertices, 0, {0}, std::move(edges));
}

struct TransductionReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::size_t super_words_checked = 0;
  std::string failure;
  std::optional<WordPair> witness;
  std::optional<Word> missing_word;
};

/// Automaton reading the second coordinates of a transducer's labels.
inline Fsa second_projection(const Transducer& t) {
  std::vector<FsaEdge> edges;
  for (const auto& e : t.edges()) edges.push_back({e.source, e.second, e.target});
  return Fsa(t.second_alphabet(), t.state_count(), t.start(), t.accepting(), std::move(edges));
}

/// Over all accepted pairs (u, v) with |u|, |v| <= bound checks
/// (i) sub(u) ⟺ super(v), and (ii) every super-identity word of length
/// <= bound read along the transducer's second coordinates appears as some
/// v whose u is a sub-identity. Stops at the first counterexample.
inline TransductionReport verify_transduction(const Transducer& t, const GroupOracle& sub_oracle,
                                              const GroupOracle& super_oracle, std::size_t bound) {
  require_same_alphabet(t.first_alphabet(), sub_oracle.alphabet_ptr(), "verify_transduction (sub)");
  require_same_alphabet(t.second_alphabet(), super_oracle.alphabet_ptr(), "verify_transduction (super)");
  TransductionReport report;
  auto pairs = transduce_pairs(t, bound, bound);
  std::set<std::vector<Letter>> identity_images;
  for (const auto& [u, v] : pairs) {
    ++report.pairs_checked;
    bool sub = sub_oracle.decide(u);
    bool super = super_oracle.decide(v);
    if (sub != super) {
      report.pass = false;
      report.failure = "sub-identity and super-identity disagree on an accepted pair";
      report.witness = WordPair{u, v};
      return report;
    }
    if (sub) identity_images.insert(v.letter_vector());
  }
  bool missing = false;
  for_each_regular(second_projection(t), bound, [&](std::span<const Letter> w) {
    if (!super_oracle.decide_letters(w)) return true;
    ++report.super_words_checked;
    if (!identity_images.count(std::vector<Letter>(w.begin(), w.end()))) {
      report.missing_word = Word(t.second_alphabet(), std::vector<Letter>(w.begin(), w.end()));
      missing = true;
      return false;
    }
    return true;
  });
  if (missing) {
    report.pass = false;
    report.failure = "a super-identity word read by the diagram is not the image of a sub-identity";
  }
  return report;
}

// ---------------------------------------------------------------------------
// JSON

/// {"degree": N, "perms": {"a": [..], ...}} keyed by generator names of `alphabet`.
inline CosetAction coset_action_from_json(const nlohmann::json& j, const AlphabetPtr& alphabet) {
  try {
    auto degree = j.at("degree").get<std::size_t>();
    const auto& perms_json = j.at("perms");
    std::vector<std::vector<std::size_t>> perms;
    for (const auto& name : alphabet->generator_names()) {
      if (!perms_json.contains(name)) throw ParseError("coset action has no permutation for '" + name + "'");
      perms.push_back(perms_json.at(name).get<std::vector<std::size_t>>());
    }
    for (const auto& [name, _] : perms_json.items()) {
      auto l = alphabet->find(name);
      if (!l || !alphabet->is_positive(*l)) throw ParseError("coset action names unknown generator '" + name + "'");
    }
    return CosetAction(alphabet, degree, std::move(perms));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed coset action: ") + e.what());
  }
}

inline nlohmann::json to_json(const CosetAction& a) {
  nlohmann::json perms = nlohmann::json::object();
  auto names = a.alphabet->generator_names();
  for (std::size_t i = 0; i < names.size(); ++i) perms[names[i]] = a.perms[i];
  return {{"degree", a.degree}, {"perms", perms}};
}

inline nlohmann::json to_json(const SchreierDiagram& d) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : d.edges) edges.push_back({e.source, d.alphabet->name(e.letter), e.target});
  return {{"vertices", d.vertices}, {"edges", edges}};
}

inline nlohmann::json to_json(const TransductionReport& r) {
  nlohmann::json j{{"pass", r.pass},
                   {"pairs_checked", r.pairs_checked},
                   {"super_words_checked", r.super_words_checked}};
  if (!r.pass) j["failure"] = r.failure;
  if (r.witness) j["witness"] = {r.witness->first.to_string(), r.witness->second.to_string()};
  if (r.missing_word) j["missing_word"] = r.missing_word->to_string();
  return j;
}

}  // namespace wpcone
