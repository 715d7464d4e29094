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

// Exact word-problem deciders: free and free abelian groups, the integral
// Heisenberg group, BS(1,2), torus bundles over the circle, right-angled
// Artin groups, and the direct-product and pullback combinators.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wpcone/error.hpp"
#include "wpcone/graphs.hpp"
#include "wpcone/group_oracle.hpp"
#include "wpcone/numeric.hpp"
#include "wpcone/words.hpp"

namespace wpcone {

inline std::vector<std::string> default_generator_names(std::size_t rank) {
  if (rank == 0) throw Error("rank must be at least 1");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rank; ++i) {
    out.push_back(rank <= 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group elements

/// Upper unitriangular integer matrix [[1,a,c],[0,1,b],[0,0,1]].
struct HeisenbergElement {
  BigInt a = 0;
  BigInt b = 0;
  BigInt c = 0;

  friend HeisenbergElement operator*(const HeisenbergElement& x, const HeisenbergElement& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c + x.a * y.b};
  }
  HeisenbergElement inverse() const { return {-a, -b, a * b - c}; }
  bool is_identity() const { return a == 0 && b == 0 && c == 0; }
  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

/// numerator * 2^exponent, normalized so the numerator is odd (or zero with
/// exponent zero).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt numerator, std::int64_t exponent) : num_(std::move(numerator)), exp_(exponent) {
    normalize();
  }

  const BigInt& numerator() const { return num_; }
  std::int64_t exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  friend Dyadic operator+(const Dyadic& x, const Dyadic& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    std::int64_t e = std::min(x.exp_, y.exp_);
    BigInt sum = (x.num_ << static_cast<unsigned>(x.exp_ - e)) +
                 (y.num_ << static_cast<unsigned>(y.exp_ - e));
    return Dyadic(std::move(sum), e);
  }
  Dyadic operator-() const { return Dyadic(-num_, exp_); }
  Dyadic times_power_of_two(std::int64_t k) const {
    return is_zero() ? *this : Dyadic(num_, exp_ + k);
  }
  friend bool operator==(const Dyadic&, const Dyadic&) = default;

 private:
  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    auto shift = boost::multiprecision::lsb(boost::multiprecision::abs(num_));
    num_ >>= shift;
    exp_ += static_cast<std::int64_t>(shift);
  }

  BigInt num_ = 0;
  std::int64_t exp_ = 0;
};

/// x ↦ 2^scale · x + translation.
struct DyadicAffineMap {
  std::int64_t scale = 0;
  Dyadic translation;

  /// (f ∘ g)(x) = f(g(x)).
  friend DyadicAffineMap compose(const DyadicAffineMap& f, const DyadicAffineMap& g) {
    return {f.scale + g.scale, g.translation.times_power_of_two(f.scale) + f.translation};
  }
  DyadicAffineMap inverse() const { return {-scale, (-translation).times_power_of_two(-scale)}; }
  bool is_identity() const { return scale == 0 && translation.is_zero(); }
  friend bool operator==(const DyadicAffineMap&, const DyadicAffineMap&) = default;
};

using Vec2 = std::array<BigInt, 2>;

struct Matrix2 {
  std::array<std::array<BigInt, 2>, 2> m{};

  static Matrix2 identity() { return {{{{1, 0}, {0, 1}}}}; }
  BigInt det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  BigInt trace() const { return m[0][0] + m[1][1]; }

  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    Matrix2 r;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) r.m[i][j] = x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
    }
    return r;
  }
  friend Vec2 operator*(const Matrix2& x, const Vec2& v) {
    return {x.m[0][0] * v[0] + x.m[0][1] * v[1], x.m[1][0] * v[0] + x.m[1][1] * v[1]};
  }
  /// Integer inverse; requires det = ±1.
  Matrix2 inverse() const {
    BigInt d = det();
    if (d != 1 && d != -1) throw Error("monodromy matrix is not invertible over the integers");
    return {{{{d * m[1][1], -d * m[0][1]}, {-d * m[1][0], d * m[0][0]}}}};
  }
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

inline Matrix2 matrix_power(const Matrix2& a, std::int64_t k) {
  Matrix2 base = k >= 0 ? a : a.inverse();
  auto e = static_cast<std::uint64_t>(k >= 0 ? k : -k);
  Matrix2 result = Matrix2::identity();
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

/// Element (v, k) of Z² ⋊_A Z.
struct TorusBundleElement {
  Vec2 v{0, 0};
  std::int64_t k = 0;
  bool is_identity() const { return v[0] == 0 && v[1] == 0 && k == 0; }
  friend bool operator==(const TorusBundleElement&, const TorusBundleElement&) = default;
};

/// Z² ⋊_A Z with multiplication (v,k)(w,l) = (v + A^k w, k + l).
class TorusBundleGroup {
 public:
  explicit TorusBundleGroup(Matrix2 monodromy)
      : a_(std::move(monodromy)), a_inv_(a_.inverse()) {}

  const Matrix2& monodromy() const { return a_; }

  TorusBundleElement multiply(const TorusBundleElement& x, const TorusBundleElement& y) const {
    Vec2 w = matrix_power(a_, x.k) * y.v;
    return {{x.v[0] + w[0], x.v[1] + w[1]}, x.k + y.k};
  }

  /// Product of the generators x = (e1,0), y = (e2,0), t = (0,1) spelled by
  /// `letters` (indices into the {x, y, t} alphabet). The running A^k is
  /// updated incrementally.
  TorusBundleElement evaluate(std::span<const Letter> letters) const {
    TorusBundleElement acc;
    Matrix2 power = Matrix2::identity();
    for (Letter l : letters) {
      switch (l) {
        case 0:  // x
        case 1:  // X
        case 2:  // y
        case 3: {  // Y
          int column = l < 2 ? 0 : 1;
          int sign = (l % 2 == 0) ? 1 : -1;
          acc.v[0] += sign * power.m[0][column];
          acc.v[1] += sign * power.m[1][column];
          break;
        }
        case 4:
          power = power * a_;
          ++acc.k;
          break;
        case 5:
          power = power * a_inv_;
          --acc.k;
          break;
        default:
          throw Error("letter outside the torus-bundle alphabet");
      }
    }
    return acc;
  }

 private:
  Matrix2 a_;
  Matrix2 a_inv_;
};

// ---------------------------------------------------------------------------
// Evaluators over the fixed alphabets used by the oracles below

inline AlphabetPtr heisenberg_alphabet() { return SymmetricAlphabet::make({"a_g", "a_h", "a_z"}); }
inline AlphabetPtr bs12_alphabet() { return SymmetricAlphabet::make({"a", "t"}); }
inline AlphabetPtr torus_bundle_alphabet() { return SymmetricAlphabet::make({"x", "y", "t"}); }

/// a_g ↦ (1,0,0), a_h ↦ (0,1,0), a_z ↦ (0,0,-1), so that
/// a_g^m a_h^n a_g^-m a_h^-n a_z^{mn} is the identity.
inline HeisenbergElement heisenberg_evaluate(std::span<const Letter> letters) {
  static const std::array<HeisenbergElement, 6> gens = {
      HeisenbergElement{1, 0, 0}, HeisenbergElement{-1, 0, 0}, HeisenbergElement{0, 1, 0},
      HeisenbergElement{0, -1, 0}, HeisenbergElement{0, 0, -1}, HeisenbergElement{0, 0, 1}};
  HeisenbergElement acc;
  for (Letter l : letters) {
    const auto& g = gens.at(l);
    acc.c += g.c + acc.a * g.b;
    acc.a += g.a;
    acc.b += g.b;
  }
  return acc;
}

/// a ↦ (x ↦ x + 1), t ↦ (x ↦ 2x); the word w1…wn maps to f_{w1} ∘ … ∘ f_{wn}.
inline DyadicAffineMap bs12_evaluate(std::span<const Letter> letters) {
  static const std::array<DyadicAffineMap, 4> gens = {
      DyadicAffineMap{0, Dyadic(1, 0)}, DyadicAffineMap{0, Dyadic(-1, 0)},
      DyadicAffineMap{1, Dyadic()}, DyadicAffineMap{-1, Dyadic()}};
  DyadicAffineMap acc;
  for (Letter l : letters) acc = compose(acc, gens.at(l));
  return acc;
}

// ---------------------------------------------------------------------------
// Oracles

inline GroupOracle free_oracle(const std::vector<std::string>& generators) {
  auto alphabet = SymmetricAlphabet::make(generators);
  const SymmetricAlphabet* raw = alphabet.get();
  return GroupOracle(alphabet, "free:" + std::to_string(generators.size()),
                     [alphabet, raw](std::span<const Letter> w) {
                       return free_reduce_letters(*raw, w).empty();
                     });
}

inline GroupOracle free_oracle(std::size_t rank) { return free_oracle(default_generator_names(rank)); }

inline GroupOracle abelian_oracle(const std::vector<std::string>& generators) {
  auto alphabet = SymmetricAlphabet::make(generators);
  std::size_t rank = generators.size();
  return GroupOracle(alphabet, "zn:" + std::to_string(rank), [rank](std::span<const Letter> w) {
    std::vector<std::int64_t> sums(rank, 0);
    for (Letter l : w) sums[l / 2] += (l % 2 == 0) ? 1 : -1;
    for (auto s : sums) {
      if (s != 0) return false;
    }
    return true;
  });
}

inline GroupOracle abelian_oracle(std::size_t rank) {
  return abelian_oracle(default_generator_names(rank));
}

/// Every word is the identity.
inline GroupOracle trivial_oracle(const std::vector<std::string>& generators) {
  return GroupOracle(SymmetricAlphabet::make(generators),
                     "trivial:" + std::to_string(generators.size()),
                     [](std::span<const Letter>) { return true; });
}

inline GroupOracle trivial_oracle(std::size_t rank) {
  return trivial_oracle(default_generator_names(rank));
}

inline GroupOracle heisenberg_oracle() {
  return GroupOracle(heisenberg_alphabet(), "heisenberg", [](std::span<const Letter> w) {
    return heisenberg_evaluate(w).is_identity();
  });
}

/// Decided through the faithful affine action of BS(1,2) on Z[1/2].
inline GroupOracle bs12_oracle() {
  return GroupOracle(bs12_alphabet(), "bs12", [](std::span<const Letter> w) {
    std::int64_t scale = 0;
    Dyadic translation;
    for (Letter l : w) {
      // acc ∘ a = (x ↦ 2^k x + t + 2^k); acc ∘ t doubles the argument.
      switch (l) {
        case 0:
          translation = translation + Dyadic(1, scale);
          break;
        case 1:
          translation = translation + Dyadic(-1, scale);
          break;
        case 2:
          ++scale;
          break;
        default:
          --scale;
          break;
      }
    }
    return scale == 0 && translation.is_zero();
  });
}

inline GroupOracle torus_bundle_oracle(const Matrix2& monodromy) {
  auto group = std::make_shared<const TorusBundleGroup>(monodromy);
  const auto& m = monodromy.m;
  std::string name = "torusbundle:" + m[0][0].str() + "," + m[0][1].str() + "," + m[1][0].str() +
                     "," + m[1][1].str();
  return GroupOracle(torus_bundle_alphabet(), name, [group](std::span<const Letter> w) {
    return group->evaluate(w).is_identity();
  });
}

/// Right-angled Artin group of a graph: one generator per vertex, with
/// generators commuting exactly along edges.
struct RaagPresentation {
  SimpleGraph graph;
  AlphabetPtr alphabet;

  explicit RaagPresentation(SimpleGraph g)
      : graph(std::move(g)), alphabet(SymmetricAlphabet::make(graph.names())) {}

  /// Vertex carrying letter l (letters 2v and 2v+1 belong to vertex v).
  static std::size_t vertex_of(Letter l) { return l / 2; }
};

/// Reduces a word in A(Γ): each incoming letter x cancels against the
/// nearest x^-1 to its left provided every letter in between commutes with
/// x; the result has no such pair, and is empty iff the word is trivial.
inline std::vector<Letter> raag_reduce(const SimpleGraph& g, std::span<const Letter> w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter x : w) {
    std::size_t vx = RaagPresentation::vertex_of(x);
    bool cancelled = false;
    for (std::size_t j = out.size(); j-- > 0;) {
      std::size_t vy = RaagPresentation::vertex_of(out[j]);
      if (vy == vx) {
        if (out[j] != x) {
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
          cancelled = true;
        }
        break;
      }
      if (!g.adjacent(vx, vy)) break;
    }
    if (!cancelled) out.push_back(x);
  }
  return out;
}

inline GroupOracle raag_oracle(const RaagPresentation& p) {
  auto graph = std::make_shared<const SimpleGraph>(p.graph);
  return GroupOracle(p.alphabet, "raag", [graph](std::span<const Letter> w) {
    return raag_reduce(*graph, w).empty();
  });
}

inline GroupOracle raag_oracle(const SimpleGraph& g) { return raag_oracle(RaagPresentation(g)); }

/// Direct product on the union of two disjoint alphabets.
inline GroupOracle product_oracle(const GroupOracle& first, const GroupOracle& second) {
  const auto& a1 = first.alphabet();
  const auto& a2 = second.alphabet();
  std::vector<std::string> names = a1.names();
  std::vector<Letter> inverse;
  for (Letter i = 0; i < a1.size(); ++i) inverse.push_back(a1.inverse(i));
  for (Letter i = 0; i < a2.size(); ++i) {
    if (a1.find(a2.name(i))) {
      throw Error("product factors share the letter name '" + a2.name(i) + "'");
    }
    names.push_back(a2.name(i));
    inverse.push_back(a1.size() + a2.inverse(i));
  }
  auto alphabet = std::make_shared<const SymmetricAlphabet>(std::move(names), std::move(inverse));
  Letter split = a1.size();
  return GroupOracle(alphabet, "product(" + first.name() + "," + second.name() + ")",
                     [first, second, split](std::span<const Letter> w) {
                       std::vector<Letter> left;
                       std::vector<Letter> right;
                       for (Letter l : w) {
                         if (l < split) {
                           left.push_back(l);
                         } else {
                           right.push_back(l - split);
                         }
                       }
                       return first.decide_letters(left) && second.decide_letters(right);
                     });
}

/// WP with respect to the generating map h: decide(w) = o.decide(h(w)).
inline GroupOracle pullback_oracle(const GroupOracle& o, const MonoidHom& h) {
  require_same_alphabet(h.target(), o.alphabet_ptr(), "pullback_oracle");
  auto hom = std::make_shared<const MonoidHom>(h);
  return GroupOracle(h.source(), "pullback(" + o.name() + ")",
                     [o, hom](std::span<const Letter> w) {
                       return o.decide_letters(hom->apply_letters(w));
                     });
}

}  // namespace wpcone
