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

// Finite automata with word-labelled edges, regular expressions, bounded
// enumeration of regular languages, and rational transducers.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wpcone/error.hpp"
#include "wpcone/group_oracle.hpp"
#include "wpcone/words.hpp"

namespace wpcone {

// ---------------------------------------------------------------------------
// Regular expressions

struct RegNode {
  enum class Kind { Empty, Epsilon, Letter, Concat, Union, Star };
  Kind kind = Kind::Empty;
  Letter letter = 0;
  std::vector<RegNode> children;

  static RegNode empty() { return {Kind::Empty, 0, {}}; }
  static RegNode epsilon() { return {Kind::Epsilon, 0, {}}; }
  static RegNode symbol(Letter l) { return {Kind::Letter, l, {}}; }
  static RegNode star(RegNode inner) { return {Kind::Star, 0, {std::move(inner)}}; }
};

/// A regular expression over a fixed alphabet.
///
/// Concrete syntax: letter tokens (longest match, as for words), postfix `*`,
/// infix `+` for union, juxtaposition for concatenation, parentheses.
/// `()` or `<eps>` is the empty word, `<empty>` the empty language.
class RegExpr {
 public:
  RegExpr(AlphabetPtr alphabet, RegNode root) : alphabet_(std::move(alphabet)), root_(std::move(root)) {}

  static RegExpr parse(const AlphabetPtr& alphabet, std::string_view text);

  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  const RegNode& root() const { return root_; }

 private:
  AlphabetPtr alphabet_;
  RegNode root_;
};

namespace detail {

class RegexParser {
 public:
  RegexParser(const AlphabetPtr& alphabet, std::string_view text)
      : alphabet_(alphabet), text_(text) {}

  RegNode parse() {
    RegNode node = parse_union();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool at_keyword(std::string_view kw) {
    skip_space();
    return text_.substr(pos_, kw.size()) == kw;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("regex '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + msg);
  }

  RegNode parse_union() {
    std::vector<RegNode> parts{parse_concat()};
    while (at('+')) {
      ++pos_;
      parts.push_back(parse_concat());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return {RegNode::Kind::Union, 0, std::move(parts)};
  }

  RegNode parse_concat() {
    std::vector<RegNode> parts;
    while (true) {
      skip_space();
      if (pos_ == text_.size() || at('+') || at(')')) break;
      parts.push_back(parse_postfix());
    }
    if (parts.empty()) return RegNode::epsilon();
    if (parts.size() == 1) return std::move(parts.front());
    return {RegNode::Kind::Concat, 0, std::move(parts)};
  }

  RegNode parse_postfix() {
    RegNode node = parse_atom();
    while (at('*')) {
      ++pos_;
      node = RegNode::star(std::move(node));
    }
    return node;
  }

  RegNode parse_atom() {
    if (at('(')) {
      ++pos_;
      if (at(')')) {
        ++pos_;
        return RegNode::epsilon();
      }
      RegNode inner = parse_union();
      if (!at(')')) fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (at_keyword("<eps>")) {
      pos_ += 5;
      return RegNode::epsilon();
    }
    if (at_keyword("<empty>")) {
      pos_ += 7;
      return RegNode::empty();
    }
    if (at('*')) fail("'*' without operand");
    auto m = alphabet_->match(text_, pos_);
    if (!m) fail("unknown letter");
    pos_ += m->second;
    return RegNode::symbol(m->first);
  }

  const AlphabetPtr& alphabet_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RegExpr RegExpr::parse(const AlphabetPtr& alphabet, std::string_view text) {
  return RegExpr(alphabet, detail::RegexParser(alphabet, text).parse());
}

// ---------------------------------------------------------------------------
// Automata

struct FsaEdge {
  std::size_t source;
  Word label;
  std::size_t target;
};

/// Finite automaton whose edges carry arbitrary words, including the empty word.
class Fsa {
 public:
  Fsa(AlphabetPtr alphabet, std::size_t state_count, std::size_t start,
      std::vector<std::size_t> accepting, std::vector<FsaEdge> edges)
      : alphabet_(std::move(alphabet)),
        state_count_(state_count),
        start_(start),
        accepting_(std::move(accepting)),
        edges_(std::move(edges)) {
    if (start_ >= state_count_) throw Error("start state out of range");
    for (auto s : accepting_) {
      if (s >= state_count_) throw Error("accepting state out of range");
    }
    std::sort(accepting_.begin(), accepting_.end());
    accepting_.erase(std::unique(accepting_.begin(), accepting_.end()), accepting_.end());
    for (const auto& e : edges_) {
      if (e.source >= state_count_ || e.target >= state_count_) {
        throw Error("edge endpoint out of range");
      }
      require_same_alphabet(e.label.alphabet_ptr(), alphabet_, "automaton edge");
    }
  }

  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  std::size_t state_count() const { return state_count_; }
  std::size_t start() const { return start_; }
  const std::vector<std::size_t>& accepting() const { return accepting_; }
  const std::vector<FsaEdge>& edges() const { return edges_; }
  bool is_accepting(std::size_t s) const {
    return std::binary_search(accepting_.begin(), accepting_.end(), s);
  }

 private:
  AlphabetPtr alphabet_;
  std::size_t state_count_;
  std::size_t start_;
  std::vector<std::size_t> accepting_;
  std::vector<FsaEdge> edges_;
};

namespace detail {

// Automaton with single-letter and epsilon edges only.
struct LetterNfa {
  std::size_t states = 0;
  std::size_t start = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<std::size_t>> epsilon;
  // letter_edges[state] = list of (letter, target)
  std::vector<std::vector<std::pair<Letter, std::size_t>>> letter_edges;

  std::size_t add_state() {
    epsilon.emplace_back();
    letter_edges.emplace_back();
    accepting.push_back(false);
    return states++;
  }

  void add_word_edge(std::size_t from, std::span<const Letter> label, std::size_t to) {
    if (label.empty()) {
      epsilon[from].push_back(to);
      return;
    }
    std::size_t cur = from;
    for (std::size_t i = 0; i < label.size(); ++i) {
      std::size_t next = (i + 1 == label.size()) ? to : add_state();
      letter_edges[cur].emplace_back(label[i], next);
      cur = next;
    }
  }

  static LetterNfa from(const Fsa& m) {
    LetterNfa nfa;
    for (std::size_t i = 0; i < m.state_count(); ++i) nfa.add_state();
    nfa.start = m.start();
    for (auto s : m.accepting()) nfa.accepting[s] = true;
    for (const auto& e : m.edges()) nfa.add_word_edge(e.source, e.label.letters(), e.target);
    return nfa;
  }

  std::vector<std::size_t> closure(std::vector<std::size_t> set) const {
    std::vector<bool> seen(states, false);
    std::vector<std::size_t> stack;
    for (auto s : set) {
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    }
    std::vector<std::size_t> out;
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      out.push_back(s);
      for (auto t : epsilon[s]) {
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Subset construction on demand, plus memoized "can reach acceptance in
// exactly r more letters" used to prune enumeration to live prefixes.
class LazyDfa {
 public:
  LazyDfa(const LetterNfa& nfa, Letter alphabet_size)
      : nfa_(nfa), alphabet_size_(alphabet_size) {
    start_ = intern(nfa_.closure({nfa_.start}));
  }

  std::uint32_t start() const { return start_; }
  bool accepting(std::uint32_t id) const { return accepting_[id]; }

  std::uint32_t step(std::uint32_t id, Letter l) {
    auto& slot = transitions_[id][l];
    if (slot >= 0) return static_cast<std::uint32_t>(slot);
    std::vector<std::size_t> next;
    for (auto s : sets_[id]) {
      for (const auto& [letter, t] : nfa_.letter_edges[s]) {
        if (letter == l) next.push_back(t);
      }
    }
    auto nid = intern(nfa_.closure(std::move(next)));
    transitions_[id][l] = nid;
    return nid;
  }

  bool can_finish(std::uint32_t id, std::size_t remaining) {
    auto& memo = finish_[id];
    if (memo.size() <= remaining) memo.resize(remaining + 1, -1);
    if (memo[remaining] >= 0) return memo[remaining] == 1;
    bool result = false;
    if (remaining == 0) {
      result = accepting_[id];
    } else if (!sets_[id].empty()) {
      for (Letter l = 0; l < alphabet_size_ && !result; ++l) {
        result = can_finish(step(id, l), remaining - 1);
      }
    }
    finish_[id].resize(std::max(finish_[id].size(), remaining + 1), -1);
    finish_[id][remaining] = result ? 1 : 0;
    return result;
  }

 private:
  std::uint32_t intern(std::vector<std::size_t> set) {
    auto it = ids_.find(set);
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(sets_.size());
    bool acc = std::any_of(set.begin(), set.end(), [&](std::size_t s) { return nfa_.accepting[s]; });
    ids_.emplace(set, id);
    sets_.push_back(std::move(set));
    accepting_.push_back(acc);
    transitions_.emplace_back(alphabet_size_, -1);
    finish_.emplace_back();
    return id;
  }

  const LetterNfa& nfa_;
  Letter alphabet_size_;
  std::uint32_t start_ = 0;
  std::map<std::vector<std::size_t>, std::uint32_t> ids_;
  std::vector<std::vector<std::size_t>> sets_;
  std::vector<bool> accepting_;
  std::vector<std::vector<std::int64_t>> transitions_;
  std::vector<std::vector<std::int8_t>> finish_;
};

inline void compile_node(const RegNode& node, LetterNfa& nfa, std::size_t from, std::size_t to) {
  switch (node.kind) {
    case RegNode::Kind::Empty:
      return;
    case RegNode::Kind::Epsilon:
      nfa.epsilon[from].push_back(to);
      return;
    case RegNode::Kind::Letter:
      nfa.letter_edges[from].emplace_back(node.letter, to);
      return;
    case RegNode::Kind::Concat: {
      std::size_t cur = from;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        std::size_t next = (i + 1 == node.children.size()) ? to : nfa.add_state();
        compile_node(node.children[i], nfa, cur, next);
        cur = next;
      }
      return;
    }
    case RegNode::Kind::Union:
      for (const auto& child : node.children) compile_node(child, nfa, from, to);
      return;
    case RegNode::Kind::Star: {
      std::size_t hub = nfa.add_state();
      nfa.epsilon[from].push_back(hub);
      nfa.epsilon[hub].push_back(to);
      compile_node(node.children.front(), nfa, hub, hub);
      return;
    }
  }
}

inline void check_letters(const RegNode& node, Letter alphabet_size) {
  if (node.kind == RegNode::Kind::Letter && node.letter >= alphabet_size) {
    throw Error("regular expression uses a letter outside its alphabet");
  }
  for (const auto& c : node.children) check_letters(c, alphabet_size);
}

}  // namespace detail

/// Thompson-style construction. The result has word labels of length <= 1.
inline Fsa compile(const RegExpr& r) {
  const auto& alphabet = r.alphabet_ptr();
  detail::check_letters(r.root(), alphabet->size());
  detail::LetterNfa nfa;
  std::size_t start = nfa.add_state();
  std::size_t accept = nfa.add_state();
  detail::compile_node(r.root(), nfa, start, accept);
  std::vector<FsaEdge> edges;
  for (std::size_t s = 0; s < nfa.states; ++s) {
    for (auto t : nfa.epsilon[s]) edges.push_back({s, Word(alphabet), t});
    for (const auto& [l, t] : nfa.letter_edges[s]) {
      edges.push_back({s, Word(alphabet, {l}), t});
    }
  }
  return Fsa(alphabet, nfa.states, start, {accept}, std::move(edges));
}

inline Fsa compile(const AlphabetPtr& alphabet, std::string_view regex) {
  return compile(RegExpr::parse(alphabet, regex));
}

inline bool accepts_letters(const Fsa& m, std::span<const Letter> w) {
  auto nfa = detail::LetterNfa::from(m);
  auto current = nfa.closure({nfa.start});
  for (Letter l : w) {
    std::vector<std::size_t> next;
    for (auto s : current) {
      for (const auto& [letter, t] : nfa.letter_edges[s]) {
        if (letter == l) next.push_back(t);
      }
    }
    current = nfa.closure(std::move(next));
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(), [&](std::size_t s) { return nfa.accepting[s]; });
}

inline bool accepts(const Fsa& m, const Word& w) {
  require_same_alphabet(w.alphabet_ptr(), m.alphabet_ptr(), "accepts");
  return accepts_letters(m, w.letters());
}

/// Calls `visit(letters)` for every accepted word of length <= max_len, in
/// length-lexicographic order, each exactly once. Only prefixes that extend
/// to an accepted word of the current length are explored, so the cost is
/// proportional to the output. `visit` returns false to stop early.
template <class Visitor>
void for_each_regular(const Fsa& m, std::size_t max_len, Visitor&& visit) {
  auto nfa = detail::LetterNfa::from(m);
  Letter k = m.alphabet_ptr()->size();
  detail::LazyDfa dfa(nfa, k);
  std::vector<Letter> prefix;
  bool stop = false;

  auto dfs = [&](auto&& self, std::uint32_t id, std::size_t remaining) -> void {
    if (remaining == 0) {
      if (dfa.accepting(id) && !visit(std::span<const Letter>(prefix))) stop = true;
      return;
    }
    for (Letter l = 0; l < k && !stop; ++l) {
      auto nid = dfa.step(id, l);
      if (!dfa.can_finish(nid, remaining - 1)) continue;
      prefix.push_back(l);
      self(self, nid, remaining - 1);
      prefix.pop_back();
    }
  };

  for (std::size_t len = 0; len <= max_len && !stop; ++len) {
    if (dfa.can_finish(dfa.start(), len)) dfs(dfs, dfa.start(), len);
  }
}

/// Materialized enumeration; throws BudgetExceeded past `budget` words.
inline std::vector<Word> enumerate_regular(const Fsa& m, std::size_t max_len,
                                           std::size_t budget = 50'000'000) {
  std::vector<Word> out;
  for_each_regular(m, max_len, [&](std::span<const Letter> w) {
    if (out.size() >= budget) {
      throw BudgetExceeded("regular enumeration exceeded " + std::to_string(budget) + " words");
    }
    out.emplace_back(m.alphabet_ptr(), std::vector<Letter>(w.begin(), w.end()));
    return true;
  });
  return out;
}

/// Words of WP(G) ∩ L(m) of length <= max_len, in length-lexicographic order.
inline std::vector<Word> oracle_slice(const GroupOracle& o, const Fsa& m, std::size_t max_len,
                                      std::size_t budget = 200'000'000) {
  require_same_alphabet(o.alphabet_ptr(), m.alphabet_ptr(), "oracle_slice");
  std::vector<Word> out;
  std::size_t visited = 0;
  for_each_regular(m, max_len, [&](std::span<const Letter> w) {
    if (++visited > budget) {
      throw BudgetExceeded("slice enumeration exceeded " + std::to_string(budget) + " words");
    }
    if (o.decide_letters(w)) out.emplace_back(m.alphabet_ptr(), std::vector<Letter>(w.begin(), w.end()));
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Transducers

struct TransducerEdge {
  std::size_t source;
  Word first;
  Word second;
  std::size_t target;
};

/// Automaton with pair-of-words labels; accepts a rational relation Σ* × Δ*.
class Transducer {
 public:
  Transducer(AlphabetPtr first_alphabet, AlphabetPtr second_alphabet, std::size_t state_count,
             std::size_t start, std::vector<std::size_t> accepting,
             std::vector<TransducerEdge> edges)
      : first_(std::move(first_alphabet)),
        second_(std::move(second_alphabet)),
        state_count_(state_count),
        start_(start),
        accepting_(std::move(accepting)),
        edges_(std::move(edges)) {
    if (start_ >= state_count_) throw Error("start state out of range");
    for (auto s : accepting_) {
      if (s >= state_count_) throw Error("accepting state out of range");
    }
    std::sort(accepting_.begin(), accepting_.end());
    accepting_.erase(std::unique(accepting_.begin(), accepting_.end()), accepting_.end());
    for (const auto& e : edges_) {
      if (e.source >= state_count_ || e.target >= state_count_) {
        throw Error("edge endpoint out of range");
      }
      require_same_alphabet(e.first.alphabet_ptr(), first_, "transducer first label");
      require_same_alphabet(e.second.alphabet_ptr(), second_, "transducer second label");
    }
  }

  const AlphabetPtr& first_alphabet() const { return first_; }
  const AlphabetPtr& second_alphabet() const { return second_; }
  std::size_t state_count() const { return state_count_; }
  std::size_t start() const { return start_; }
  const std::vector<std::size_t>& accepting() const { return accepting_; }
  const std::vector<TransducerEdge>& edges() const { return edges_; }
  std::vector<TransducerEdge>& mutable_edges() { return edges_; }
  bool is_accepting(std::size_t s) const {
    return std::binary_search(accepting_.begin(), accepting_.end(), s);
  }

 private:
  AlphabetPtr first_;
  AlphabetPtr second_;
  std::size_t state_count_;
  std::size_t start_;
  std::vector<std::size_t> accepting_;
  std::vector<TransducerEdge> edges_;
};

using WordPair = std::pair<Word, Word>;

/// Every accepted pair (u, v) with |u| <= max_first and |v| <= max_second,
/// sorted by u then v in length-lexicographic order.
inline std::vector<WordPair> transduce_pairs(const Transducer& t, std::size_t max_first,
                                             std::size_t max_second,
                                             std::size_t budget = 20'000'000) {
  using Config = std::tuple<std::size_t, std::vector<Letter>, std::vector<Letter>>;
  std::set<Config> seen;
  std::vector<Config> frontier;
  std::set<std::pair<std::vector<Letter>, std::vector<Letter>>> found;

  std::vector<std::vector<const TransducerEdge*>> out_edges(t.state_count());
  for (const auto& e : t.edges()) out_edges[e.source].push_back(&e);

  Config init{t.start(), {}, {}};
  seen.insert(init);
  frontier.push_back(init);
  while (!frontier.empty()) {
    auto [state, u, v] = std::move(frontier.back());
    frontier.pop_back();
    if (t.is_accepting(state)) found.emplace(u, v);
    for (const auto* e : out_edges[state]) {
      if (u.size() + e->first.size() > max_first || v.size() + e->second.size() > max_second) {
        continue;
      }
      Config next{e->target, u, v};
      auto& nu = std::get<1>(next);
      auto& nv = std::get<2>(next);
      nu.insert(nu.end(), e->first.letters().begin(), e->first.letters().end());
      nv.insert(nv.end(), e->second.letters().begin(), e->second.letters().end());
      if (seen.insert(next).second) {
        if (seen.size() > budget) throw BudgetExceeded("transducer search exceeded budget");
        frontier.push_back(std::move(next));
      }
    }
  }

  std::vector<WordPair> pairs;
  for (const auto& [u, v] : found) {
    pairs.emplace_back(Word(t.first_alphabet(), u), Word(t.second_alphabet(), v));
  }
  std::sort(pairs.begin(), pairs.end(), [](const WordPair& a, const WordPair& b) {
    if (!(a.first == b.first)) return shortlex_less(a.first, b.first);
    return shortlex_less(a.second, b.second);
  });
  return pairs;
}

/// Second coordinates (|v| <= max_second) of accepted pairs whose first
/// coordinate lies in `sample`, in length-lexicographic order.
inline std::vector<Word> image_of_sample(const Transducer& t, const std::vector<Word>& sample,
                                         std::size_t max_second) {
  std::set<std::vector<Letter>> seen_outputs;
  std::vector<std::vector<const TransducerEdge*>> out_edges(t.state_count());
  for (const auto& e : t.edges()) out_edges[e.source].push_back(&e);

  for (const auto& u : sample) {
    require_same_alphabet(u.alphabet_ptr(), t.first_alphabet(), "image_of_sample");
    auto input = u.letters();
    using Config = std::tuple<std::size_t, std::size_t, std::vector<Letter>>;
    std::set<Config> seen;
    std::vector<Config> frontier{{t.start(), 0, {}}};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
      auto [state, pos, v] = std::move(frontier.back());
      frontier.pop_back();
      if (pos == input.size() && t.is_accepting(state)) seen_outputs.insert(v);
      for (const auto* e : out_edges[state]) {
        auto label = e->first.letters();
        if (pos + label.size() > input.size() || v.size() + e->second.size() > max_second) continue;
        if (!std::equal(label.begin(), label.end(), input.begin() + static_cast<std::ptrdiff_t>(pos))) {
          continue;
        }
        Config next{e->target, pos + label.size(), v};
        auto& nv = std::get<2>(next);
        nv.insert(nv.end(), e->second.letters().begin(), e->second.letters().end());
        if (seen.insert(next).second) frontier.push_back(std::move(next));
      }
    }
  }

  std::vector<Word> out;
  for (const auto& v : seen_outputs) out.emplace_back(t.second_alphabet(), v);
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return shortlex_less(a, b); });
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const Fsa& m) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : m.edges()) edges.push_back({e.source, e.label.to_string(), e.target});
  return {{"alphabet", alphabet_to_json(*m.alphabet_ptr())},
          {"states", m.state_count()},
          {"start", m.start()},
          {"accepting", m.accepting()},
          {"edges", edges}};
}

inline Fsa fsa_from_json(const nlohmann::json& j) {
  auto alphabet = alphabet_from_json(j.at("alphabet"));
  std::vector<FsaEdge> edges;
  for (const auto& e : j.at("edges")) {
    edges.push_back({e.at(0).get<std::size_t>(), Word::parse(alphabet, e.at(1).get<std::string>()),
                     e.at(2).get<std::size_t>()});
  }
  return Fsa(alphabet, j.at("states").get<std::size_t>(), j.at("start").get<std::size_t>(),
             j.at("accepting").get<std::vector<std::size_t>>(), std::move(edges));
}

inline nlohmann::json to_json(const Transducer& t) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : t.edges()) {
    edges.push_back({e.source, e.first.to_string(), e.second.to_string(), e.target});
  }
  return {{"first_alphabet", alphabet_to_json(*t.first_alphabet())},
          {"second_alphabet", alphabet_to_json(*t.second_alphabet())},
          {"states", t.state_count()},
          {"start", t.start()},
          {"accepting", t.accepting()},
          {"edges", edges}};
}

inline Transducer transducer_from_json(const nlohmann::json& j) {
  auto first = alphabet_from_json(j.at("first_alphabet"));
  auto second = alphabet_from_json(j.at("second_alphabet"));
  std::vector<TransducerEdge> edges;
  for (const auto& e : j.at("edges")) {
    edges.push_back({e.at(0).get<std::size_t>(), Word::parse(first, e.at(1).get<std::string>()),
                     Word::parse(second, e.at(2).get<std::string>()), e.at(3).get<std::size_t>()});
  }
  return Transducer(first, second, j.at("states").get<std::size_t>(),
                    j.at("start").get<std::size_t>(),
                    j.at("accepting").get<std::vector<std::size_t>>(), std::move(edges));
}

}  // namespace wpcone
