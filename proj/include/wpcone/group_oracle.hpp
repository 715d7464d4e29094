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

#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>

#include "wpcone/words.hpp"

namespace wpcone {

/// Exact membership test for a word problem WP(G) over a fixed alphabet.
class GroupOracle {
 public:
  using Decider = std::function<bool(std::span<const Letter>)>;

  GroupOracle(AlphabetPtr alphabet, std::string name, Decider decide)
      : alphabet_(std::move(alphabet)), name_(std::move(name)), decide_(std::move(decide)) {}

  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  const SymmetricAlphabet& alphabet() const { return *alphabet_; }
  const std::string& name() const { return name_; }

  /// True iff `w` represents the identity.
  bool decide(const Word& w) const {
    require_same_alphabet(w.alphabet_ptr(), alphabet_, name_);
    return decide_(w.letters());
  }

  /// Unchecked fast path; letters must be valid indices of alphabet().
  bool decide_letters(std::span<const Letter> w) const { return decide_(w); }

  bool decide(std::string_view text) const { return decide(Word::parse(alphabet_, text)); }

 private:
  AlphabetPtr alphabet_;
  std::string name_;
  Decider decide_;
};

}  // namespace wpcone
