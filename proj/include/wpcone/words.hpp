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

// Symmetric alphabets, words over them, and monoid homomorphisms.
//
// Text syntax: a single lowercase generator `a` has inverse `A`; any other
// generator name `g` has inverse `g'`. Word text is tokenized by longest
// match against the letter names, whitespace is ignored, so "taTAA",
// "t a T A A" and "a_g a_h a_g' a_h'" all parse.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wpcone/error.hpp"

namespace wpcone {

using Letter = std::uint32_t;

class SymmetricAlphabet {
 public:
  /// `inverse` must be a fixed-point-free involution on letter indices.
  SymmetricAlphabet(std::vector<std::string> letters, std::vector<Letter> inverse)
      : letters_(std::move(letters)), inverse_(std::move(inverse)) {
    if (letters_.empty()) throw Error("alphabet must be nonempty");
    if (inverse_.size() != letters_.size()) {
      throw Error("inverse table size does not match letter count");
    }
    for (Letter i = 0; i < size(); ++i) {
      Letter j = inverse_[i];
      if (j >= size() || inverse_[j] != i || j == i) {
        throw Error("inverse is not a fixed-point-free involution at '" +
                    letters_[i] + "'");
      }
    }
    for (Letter i = 0; i < size(); ++i) {
      if (letters_[i].empty()) throw Error("empty letter name");
      for (char c : letters_[i]) {
        if (std::isspace(static_cast<unsigned char>(c))) {
          throw Error("letter name contains whitespace: '" + letters_[i] + "'");
        }
      }
      if (!lookup_.emplace(letters_[i], i).second) {
        throw Error("duplicate letter name '" + letters_[i] + "'");
      }
    }
    // `g'` is always accepted for the inverse of a positive letter `g`.
    for (Letter i = 0; i < size(); ++i) {
      if (is_positive(i)) lookup_.emplace(letters_[i] + "'", inverse_[i]);
    }
    for (const auto& [name, _] : lookup_) {
      max_name_length_ = std::max(max_name_length_, name.size());
    }
  }

  /// Letters g0, g0^-1, g1, g1^-1, ... with the naming convention above.
  static SymmetricAlphabet from_generators(const std::vector<std::string>& generators) {
    std::vector<std::string> letters;
    std::vector<Letter> inverse;
    for (const auto& g : generators) {
      bool case_pair = g.size() == 1 && std::islower(static_cast<unsigned char>(g[0]));
      std::string inv = case_pair ? std::string(1, static_cast<char>(std::toupper(
                                                       static_cast<unsigned char>(g[0]))))
                                  : g + "'";
      if (case_pair &&
          std::find(generators.begin(), generators.end(), inv) != generators.end()) {
        inv = g + "'";
      }
      auto base = static_cast<Letter>(letters.size());
      letters.push_back(g);
      letters.push_back(inv);
      inverse.push_back(base + 1);
      inverse.push_back(base);
    }
    return SymmetricAlphabet(std::move(letters), std::move(inverse));
  }

  static std::shared_ptr<const SymmetricAlphabet> make(
      const std::vector<std::string>& generators) {
    return std::make_shared<const SymmetricAlphabet>(from_generators(generators));
  }

  Letter size() const { return static_cast<Letter>(letters_.size()); }
  const std::string& name(Letter i) const { return letters_.at(i); }
  const std::vector<std::string>& names() const { return letters_; }
  Letter inverse(Letter i) const { return inverse_.at(i); }
  /// The representative of each {g, g^-1} pair is the smaller index.
  bool is_positive(Letter i) const { return i < inverse_[i]; }

  std::vector<Letter> positive_letters() const {
    std::vector<Letter> out;
    for (Letter i = 0; i < size(); ++i) {
      if (is_positive(i)) out.push_back(i);
    }
    return out;
  }

  std::vector<std::string> generator_names() const {
    std::vector<std::string> out;
    for (Letter i : positive_letters()) out.push_back(letters_[i]);
    return out;
  }

  std::optional<Letter> find(std::string_view name) const {
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  Letter at(std::string_view name) const {
    if (auto l = find(name)) return *l;
    throw ParseError("unknown letter '" + std::string(name) + "'");
  }

  /// Longest letter name matching `text` at `pos`; returns the letter and
  /// the number of characters consumed.
  std::optional<std::pair<Letter, std::size_t>> match(std::string_view text,
                                                      std::size_t pos) const {
    std::size_t limit = std::min(max_name_length_, text.size() - pos);
    for (std::size_t len = limit; len > 0; --len) {
      auto it = lookup_.find(std::string(text.substr(pos, len)));
      if (it != lookup_.end()) return std::pair{it->second, len};
    }
    return std::nullopt;
  }

  bool single_character_names() const {
    return std::all_of(letters_.begin(), letters_.end(),
                       [](const std::string& s) { return s.size() == 1; });
  }

  bool operator==(const SymmetricAlphabet& other) const {
    return letters_ == other.letters_ && inverse_ == other.inverse_;
  }

 private:
  std::vector<std::string> letters_;
  std::vector<Letter> inverse_;
  std::unordered_map<std::string, Letter> lookup_;
  std::size_t max_name_length_ = 0;
};

using AlphabetPtr = std::shared_ptr<const SymmetricAlphabet>;

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

class Word {
 public:
  explicit Word(AlphabetPtr alphabet, std::vector<Letter> letters = {})
      : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
    if (!alphabet_) throw Error("word without alphabet");
    for (Letter l : letters_) {
      if (l >= alphabet_->size()) throw Error("letter index out of range");
    }
  }

  static Word parse(const AlphabetPtr& alphabet, std::string_view text) {
    std::vector<Letter> letters;
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      auto m = alphabet->match(text, pos);
      if (!m) {
        throw ParseError("cannot read a letter at position " + std::to_string(pos) +
                         " of '" + std::string(text) + "'");
      }
      letters.push_back(m->first);
      pos += m->second;
    }
    return Word(alphabet, std::move(letters));
  }

  const SymmetricAlphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  std::span<const Letter> letters() const { return letters_; }
  const std::vector<Letter>& letter_vector() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  std::string to_string() const {
    std::string out;
    bool compact = alphabet_->single_character_names();
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (!compact && i != 0) out += ' ';
      out += alphabet_->name(letters_[i]);
    }
    return out;
  }

  friend bool operator==(const Word& u, const Word& v) {
    return u.letters_ == v.letters_ && same_alphabet(u.alphabet_, v.alphabet_);
  }

  /// Length-lexicographic order by letter index.
  friend bool shortlex_less(const Word& u, const Word& v) {
    if (u.size() != v.size()) return u.size() < v.size();
    return u.letters_ < v.letters_;
  }

 private:
  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

inline void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b,
                                  std::string_view what) {
  if (!same_alphabet(a, b)) throw AlphabetMismatch(std::string(what) + ": alphabet mismatch");
}

inline Word concat(const Word& u, const Word& v) {
  require_same_alphabet(u.alphabet_ptr(), v.alphabet_ptr(), "concat");
  std::vector<Letter> out(u.letters().begin(), u.letters().end());
  out.insert(out.end(), v.letters().begin(), v.letters().end());
  return Word(u.alphabet_ptr(), std::move(out));
}

inline std::vector<Letter> inverse_letters(const SymmetricAlphabet& alphabet,
                                           std::span<const Letter> w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(alphabet.inverse(*it));
  return out;
}

inline Word formal_inverse(const Word& w) {
  return Word(w.alphabet_ptr(), inverse_letters(w.alphabet(), w.letters()));
}

/// Single stack pass; cancellation is confluent so any order gives this result.
inline std::vector<Letter> free_reduce_letters(const SymmetricAlphabet& alphabet,
                                               std::span<const Letter> w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter l : w) {
    if (!stack.empty() && stack.back() == alphabet.inverse(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return stack;
}

inline Word free_reduce(const Word& w) {
  return Word(w.alphabet_ptr(), free_reduce_letters(w.alphabet(), w.letters()));
}

inline bool is_freely_reduced(const SymmetricAlphabet& alphabet, std::span<const Letter> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == alphabet.inverse(w[i - 1])) return false;
  }
  return true;
}

inline bool is_freely_reduced(const Word& w) { return is_freely_reduced(w.alphabet(), w.letters()); }

/// A homomorphism of free monoids Σ* → Δ* that commutes with the involutions.
class MonoidHom {
 public:
  /// `images[i]` is the image of source letter i. Throws unless
  /// image(a^-1) is the formal inverse of image(a) for every a.
  MonoidHom(AlphabetPtr source, AlphabetPtr target, std::vector<Word> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->size()) throw Error("homomorphism image count mismatch");
    for (const auto& img : images_) {
      require_same_alphabet(img.alphabet_ptr(), target_, "homomorphism image");
    }
    for (Letter i = 0; i < source_->size(); ++i) {
      if (!(images_[source_->inverse(i)] == formal_inverse(images_[i]))) {
        throw Error("homomorphism does not respect the involution at '" +
                    source_->name(i) + "'");
      }
    }
  }

  /// Builds the hom from images of positive letters only; inverse letters
  /// map to formal inverses.
  static MonoidHom from_generator_images(const AlphabetPtr& source, const AlphabetPtr& target,
                                         const std::map<std::string, Word>& images) {
    std::vector<std::optional<Word>> slots(source->size());
    for (const auto& [name, img] : images) {
      Letter l = source->at(name);
      if (!source->is_positive(l)) {
        throw Error("images must be given for positive letters, got '" + name + "'");
      }
      slots[l] = img;
      slots[source->inverse(l)] = formal_inverse(img);
    }
    std::vector<Word> out;
    for (Letter i = 0; i < source->size(); ++i) {
      if (!slots[i]) throw Error("no image for letter '" + source->name(i) + "'");
      out.push_back(*slots[i]);
    }
    return MonoidHom(source, target, std::move(out));
  }

  static MonoidHom from_generator_images(const AlphabetPtr& source, const AlphabetPtr& target,
                                         const std::map<std::string, std::string>& images) {
    std::map<std::string, Word> parsed;
    for (const auto& [name, text] : images) parsed.emplace(name, Word::parse(target, text));
    return from_generator_images(source, target, parsed);
  }

  static MonoidHom identity(const AlphabetPtr& alphabet) {
    std::vector<Word> out;
    for (Letter i = 0; i < alphabet->size(); ++i) out.emplace_back(alphabet, std::vector{i});
    return MonoidHom(alphabet, alphabet, std::move(out));
  }

  const AlphabetPtr& source() const { return source_; }
  const AlphabetPtr& target() const { return target_; }
  const Word& image(Letter l) const { return images_.at(l); }

  std::vector<Letter> apply_letters(std::span<const Letter> w) const {
    std::vector<Letter> out;
    for (Letter l : w) {
      auto img = images_[l].letters();
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

 private:
  AlphabetPtr source_;
  AlphabetPtr target_;
  std::vector<Word> images_;
};

inline Word apply_hom(const MonoidHom& h, const Word& w) {
  require_same_alphabet(w.alphabet_ptr(), h.source(), "apply_hom");
  return Word(h.target(), h.apply_letters(w.letters()));
}

// JSON: an alphabet is {"letters": [generator names]} or a bare array.
inline AlphabetPtr alphabet_from_json(const nlohmann::json& j) {
  const nlohmann::json& list = j.is_object() ? j.at("letters") : j;
  if (!list.is_array()) throw ParseError("alphabet JSON must list letter names");
  return SymmetricAlphabet::make(list.get<std::vector<std::string>>());
}

inline nlohmann::json alphabet_to_json(const SymmetricAlphabet& alphabet) {
  return nlohmann::json{{"letters", alphabet.generator_names()}};
}

}  // namespace wpcone
