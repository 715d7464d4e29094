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

// Parikh vectors, projections, semilinear sets, bounded semilinear fitting,
// and the pointwise growth certificates that obstruct semilinearity.

#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wpcone/error.hpp"
#include "wpcone/numeric.hpp"
#include "wpcone/words.hpp"

namespace wpcone {

using Point = std::vector<std::uint64_t>;

struct ParikhVector {
  AlphabetPtr alphabet;
  std::vector<std::uint64_t> counts;

  friend ParikhVector operator+(const ParikhVector& x, const ParikhVector& y) {
    require_same_alphabet(x.alphabet, y.alphabet, "parikh sum");
    ParikhVector r = x;
    for (std::size_t i = 0; i < r.counts.size(); ++i) r.counts[i] += y.counts[i];
    return r;
  }
  friend bool operator==(const ParikhVector& x, const ParikhVector& y) {
    return x.counts == y.counts && same_alphabet(x.alphabet, y.alphabet);
  }
};

inline std::vector<std::uint64_t> letter_counts(Letter alphabet_size, std::span<const Letter> w) {
  std::vector<std::uint64_t> counts(alphabet_size, 0);
  for (Letter l : w) ++counts[l];
  return counts;
}

/// Letter counts, one coordinate per letter (inverse letters counted separately).
inline ParikhVector parikh(const Word& w) {
  return {w.alphabet_ptr(), letter_counts(w.alphabet().size(), w.letters())};
}

/// Each output coordinate is the sum of the counts of a group of letters.
class Projection {
 public:
  Projection(AlphabetPtr alphabet, std::vector<std::vector<Letter>> groups)
      : alphabet_(std::move(alphabet)), groups_(std::move(groups)) {
    if (groups_.empty()) throw Error("projection needs at least one coordinate");
    for (const auto& g : groups_) {
      if (g.empty()) throw Error("projection coordinate with no letters");
      for (Letter l : g) {
        if (l >= alphabet_->size()) throw Error("projection letter out of range");
      }
    }
  }

  /// "t,A" selects two coordinates; "x+y+X+Y" sums letters into one.
  static Projection parse(const AlphabetPtr& alphabet, std::string_view text) {
    std::vector<std::vector<Letter>> groups;
    std::string s(text);
    std::stringstream coords(s);
    for (std::string coord; std::getline(coords, coord, ',');) {
      std::vector<Letter> group;
      std::stringstream terms(coord);
      for (std::string term; std::getline(terms, term, '+');) {
        auto b = term.find_first_not_of(" \t");
        auto e = term.find_last_not_of(" \t");
        if (b == std::string::npos) throw ParseError("empty projection term in '" + s + "'");
        group.push_back(alphabet->at(term.substr(b, e - b + 1)));
      }
      if (group.empty()) throw ParseError("empty projection coordinate in '" + s + "'");
      groups.push_back(std::move(group));
    }
    if (groups.empty()) throw ParseError("empty projection selector");
    return Projection(alphabet, std::move(groups));
  }

  static Projection identity(const AlphabetPtr& alphabet) {
    std::vector<std::vector<Letter>> groups;
    for (Letter l = 0; l < alphabet->size(); ++l) groups.push_back({l});
    return Projection(alphabet, std::move(groups));
  }

  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  std::size_t dimension() const { return groups_.size(); }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& g : groups_) {
      std::string label;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i != 0) label += '+';
        label += alphabet_->name(g[i]);
      }
      out.push_back(label);
    }
    return out;
  }

  Point apply(const std::vector<std::uint64_t>& counts) const {
    Point p;
    p.reserve(groups_.size());
    for (const auto& g : groups_) {
      std::uint64_t sum = 0;
      for (Letter l : g) sum += counts.at(l);
      p.push_back(sum);
    }
    return p;
  }

  Point apply(const ParikhVector& v) const {
    require_same_alphabet(v.alphabet, alphabet_, "projection");
    return apply(v.counts);
  }

  Point apply(const Word& w) const { return apply(parikh(w)); }

 private:
  AlphabetPtr alphabet_;
  std::vector<std::vector<Letter>> groups_;
};

/// Projected points with duplicates removed, first occurrences kept in order.
inline std::vector<Point> project(const std::vector<ParikhVector>& vs, const Projection& p) {
  std::vector<Point> out;
  std::set<Point> seen;
  for (const auto& v : vs) {
    auto q = p.apply(v);
    if (seen.insert(q).second) out.push_back(std::move(q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linear and semilinear sets

struct LinearSet {
  Point base;
  std::vector<Point> generators;
  friend bool operator==(const LinearSet&, const LinearSet&) = default;
};

struct SemilinearSet {
  std::size_t dimension = 0;
  std::vector<LinearSet> components;
};

namespace detail {

inline bool combination_reaches(const std::vector<const Point*>& gens, std::size_t index,
                                Point& remaining) {
  if (index == gens.size()) {
    return std::all_of(remaining.begin(), remaining.end(), [](std::uint64_t x) { return x == 0; });
  }
  const Point& g = *gens[index];
  std::uint64_t limit = UINT64_MAX;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g[j] != 0) limit = std::min(limit, remaining[j] / g[j]);
  }
  for (std::uint64_t c = 0;; ++c) {
    if (combination_reaches(gens, index + 1, remaining)) {
      for (std::size_t j = 0; j < g.size(); ++j) remaining[j] += c * g[j];
      return true;
    }
    if (c == limit) {
      for (std::size_t j = 0; j < g.size(); ++j) remaining[j] += c * g[j];
      return false;
    }
    for (std::size_t j = 0; j < g.size(); ++j) remaining[j] -= g[j];
  }
}

}  // namespace detail

/// Exact: v ∈ base + N·generators. Coordinates where every generator is
/// zero are settled by equality first; the remaining coefficients are
/// bounded by the componentwise quotients.
inline bool linear_member(const LinearSet& l, const Point& v) {
  if (v.size() != l.base.size()) throw Error("membership: dimension mismatch");
  Point remaining(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] < l.base[j]) return false;
    remaining[j] = v[j] - l.base[j];
  }
  std::vector<const Point*> gens;
  for (const auto& g : l.generators) {
    if (g.size() != v.size()) throw Error("membership: generator dimension mismatch");
    if (std::any_of(g.begin(), g.end(), [](std::uint64_t x) { return x != 0; })) gens.push_back(&g);
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    bool free_column = std::all_of(gens.begin(), gens.end(), [&](const Point* g) { return (*g)[j] == 0; });
    if (free_column && remaining[j] != 0) return false;
  }
  return detail::combination_reaches(gens, 0, remaining);
}

inline bool semilinear_member(const SemilinearSet& s, const Point& v) {
  if (v.size() != s.dimension) throw Error("membership: dimension mismatch");
  return std::any_of(s.components.begin(), s.components.end(),
                     [&](const LinearSet& l) { return linear_member(l, v); });
}

struct FitBounds {
  std::size_t max_components = 2;
  std::size_t max_generators = 2;
  std::uint64_t coord_bound = 3;
  /// Refuse searches with more candidate linear sets than this.
  std::uint64_t candidate_cap = 20'000'000;
};

namespace detail {

inline void enumerate_grid(std::size_t dim, std::uint64_t bound, std::vector<Point>& out) {
  Point p(dim, 0);
  while (true) {
    out.push_back(p);
    std::size_t j = dim;
    while (j-- > 0) {
      if (p[j] < bound) {
        ++p[j];
        break;
      }
      p[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) return;
  }
}

inline std::uint64_t binomial_sum(std::uint64_t n, std::uint64_t k) {
  std::uint64_t total = 0;
  std::uint64_t term = 1;
  for (std::uint64_t i = 0; i <= k && i <= n; ++i) {
    total += term;
    term = term * (n - i) / (i + 1);
  }
  return total;
}

}  // namespace detail

/// Exhaustive search for a semilinear set within `bounds` that contains every
/// point of `points_in` and none of `points_out`. Candidates are visited in a
/// fixed canonical order (base, then generator subsets by size and index),
/// so the first set found is deterministic. Returns nullopt iff no such set
/// exists within the bounds.
inline std::optional<SemilinearSet> fit_semilinear(const std::vector<Point>& points_in,
                                                   const std::vector<Point>& points_out,
                                                   const FitBounds& bounds) {
  std::size_t dim = 0;
  if (!points_in.empty()) {
    dim = points_in.front().size();
  } else if (!points_out.empty()) {
    dim = points_out.front().size();
  }
  for (const auto& p : points_in) {
    if (p.size() != dim) throw Error("fit: dimension mismatch");
  }
  for (const auto& p : points_out) {
    if (p.size() != dim) throw Error("fit: dimension mismatch");
  }
  std::set<Point> out_set(points_out.begin(), points_out.end());
  for (const auto& p : points_in) {
    if (out_set.count(p)) throw Error("fit: a point is both required and excluded");
  }
  if (points_in.empty()) return SemilinearSet{dim, {}};
  if (dim == 0) throw Error("fit: zero-dimensional points");

  std::vector<Point> grid;
  detail::enumerate_grid(dim, bounds.coord_bound, grid);
  std::vector<Point> nonzero(grid.begin() + 1, grid.end());
  std::uint64_t subsets = detail::binomial_sum(nonzero.size(), bounds.max_generators);
  if (grid.size() > bounds.candidate_cap / std::max<std::uint64_t>(subsets, 1)) {
    throw BudgetExceeded("fit: candidate space exceeds the configured cap");
  }

  struct Candidate {
    LinearSet set;
    std::vector<bool> cover;
  };
  std::vector<Candidate> candidates;
  std::vector<std::size_t> chosen;

  auto consider = [&](const Point& base) {
    LinearSet l{base, {}};
    for (auto i : chosen) l.generators.push_back(nonzero[i]);
    for (const auto& o : points_out) {
      if (linear_member(l, o)) return;
    }
    std::vector<bool> cover(points_in.size());
    bool any = false;
    for (std::size_t i = 0; i < points_in.size(); ++i) {
      cover[i] = linear_member(l, points_in[i]);
      any = any || cover[i];
    }
    if (any) candidates.push_back({std::move(l), std::move(cover)});
  };

  for (const auto& base : grid) {
    for (std::size_t k = 0; k <= bounds.max_generators; ++k) {
      if (k > nonzero.size()) break;
      chosen.resize(k);
      std::iota(chosen.begin(), chosen.end(), 0);
      while (true) {
        consider(base);
        // next k-combination of nonzero indices
        std::size_t i = k;
        while (i-- > 0) {
          if (chosen[i] < nonzero.size() - k + i) break;
        }
        if (i == static_cast<std::size_t>(-1)) break;
        ++chosen[i];
        for (std::size_t j = i + 1; j < k; ++j) chosen[j] = chosen[j - 1] + 1;
      }
    }
  }

  // Depth-limited cover search keyed on the first uncovered point.
  std::vector<std::size_t> picked;
  std::vector<int> covered(points_in.size(), 0);
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    auto first = std::find(covered.begin(), covered.end(), 0);
    if (first == covered.end()) return true;
    if (depth == bounds.max_components) return false;
    auto target = static_cast<std::size_t>(first - covered.begin());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!candidates[c].cover[target]) continue;
      picked.push_back(c);
      for (std::size_t i = 0; i < covered.size(); ++i) covered[i] += candidates[c].cover[i] ? 1 : 0;
      if (self(self, depth + 1)) return true;
      for (std::size_t i = 0; i < covered.size(); ++i) covered[i] -= candidates[c].cover[i] ? 1 : 0;
      picked.pop_back();
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  SemilinearSet result{dim, {}};
  for (auto c : picked) result.components.push_back(candidates[c].set);
  return result;
}

/// Every point of `box` (given as per-coordinate inclusive maxima) that is
/// not in `points`.
inline std::vector<Point> box_complement(const std::vector<Point>& points, const Point& box_max) {
  std::set<Point> in(points.begin(), points.end());
  std::vector<Point> out;
  Point p(box_max.size(), 0);
  if (box_max.empty()) return out;
  while (true) {
    if (!in.count(p)) out.push_back(p);
    std::size_t j = p.size();
    while (j-- > 0) {
      if (p[j] < box_max[j]) {
        ++p[j];
        break;
      }
      p[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) return out;
  }
}

inline std::vector<Point> restrict_to_box(const std::vector<Point>& points, const Point& box_max) {
  std::vector<Point> out;
  for (const auto& p : points) {
    bool inside = p.size() == box_max.size();
    for (std::size_t j = 0; inside && j < p.size(); ++j) inside = p[j] <= box_max[j];
    if (inside) out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Growth certificates

struct GrowthCertificate {
  enum class Kind { VerticalGap, ExponentialLowerBound, QuadraticLowerBound };
  Kind kind = Kind::VerticalGap;
  /// Base for the exponential bound, coefficient for the quadratic one.
  Rational parameter = 0;

  static GrowthCertificate vertical_gap() { return {Kind::VerticalGap, 0}; }
  static GrowthCertificate exponential(Rational base) { return {Kind::ExponentialLowerBound, std::move(base)}; }
  static GrowthCertificate quadratic(Rational coeff) { return {Kind::QuadraticLowerBound, std::move(coeff)}; }

  /// "vertical-gap" | "exp:BASE" | "quad:COEFF"
  static GrowthCertificate parse(std::string_view text) {
    std::string s(text);
    if (s == "vertical-gap") return vertical_gap();
    if (s.rfind("exp:", 0) == 0) return exponential(parse_rational(s.substr(4)));
    if (s.rfind("quad:", 0) == 0) return quadratic(parse_rational(s.substr(5)));
    throw ParseError("unknown certificate '" + s + "'");
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::VerticalGap:
        return "vertical-gap";
      case Kind::ExponentialLowerBound:
        return "exp:" + wpcone::to_string(parameter);
      case Kind::QuadraticLowerBound:
        return "quad:" + wpcone::to_string(parameter);
    }
    return {};
  }
};

/// Conjunction of the certificate's pointwise predicate over a finite set of
/// 2-dimensional points:
///   VerticalGap: points sharing first coordinate m differ by >= m in the second;
///   ExponentialLowerBound(β): second >= β^first;
///   QuadraticLowerBound(κ): second >= κ·first².
inline bool check_certificate(const std::vector<Point>& points, const GrowthCertificate& c) {
  for (const auto& p : points) {
    if (p.size() != 2) throw Error("certificates apply to 2-dimensional points");
  }
  switch (c.kind) {
    case GrowthCertificate::Kind::VerticalGap: {
      std::map<std::uint64_t, std::vector<std::uint64_t>> columns;
      for (const auto& p : points) columns[p[0]].push_back(p[1]);
      for (auto& [m, ys] : columns) {
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        for (std::size_t i = 1; i < ys.size(); ++i) {
          if (ys[i] - ys[i - 1] < m) return false;
        }
      }
      return true;
    }
    case GrowthCertificate::Kind::ExponentialLowerBound:
      for (const auto& p : points) {
        if (Rational(BigInt(p[1])) < pow_rational(c.parameter, p[0])) return false;
      }
      return true;
    case GrowthCertificate::Kind::QuadraticLowerBound:
      for (const auto& p : points) {
        BigInt x(p[0]);
        if (Rational(BigInt(p[1])) < c.parameter * Rational(x * x)) return false;
      }
      return true;
  }
  return false;
}

/// Largest number of the (distinct) points lying on one affine line.
inline std::size_t max_collinear(const std::vector<Point>& points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (const auto& p : pts) {
    if (p.size() != 2) throw Error("max_collinear needs 2-dimensional points");
  }
  if (pts.size() <= 2) return pts.size();
  std::size_t best = 1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::map<std::pair<BigInt, BigInt>, std::size_t> directions;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      BigInt dx = BigInt(pts[j][0]) - BigInt(pts[i][0]);
      BigInt dy = BigInt(pts[j][1]) - BigInt(pts[i][1]);
      BigInt g = boost::multiprecision::gcd(dx, dy);
      dx /= g;
      dy /= g;
      if (dx < 0 || (dx == 0 && dy < 0)) {
        dx = -dx;
        dy = -dy;
      }
      best = std::max(best, ++directions[{dx, dy}] + 1);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Point files

inline void write_points_csv(std::ostream& os, const std::vector<std::string>& columns,
                             const std::vector<Point>& points) {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << '\n';
  }
}

/// Reads comma-separated natural tuples; a non-numeric first line is a header.
inline std::vector<Point> read_points_csv(std::istream& is) {
  std::vector<Point> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    bool numeric = line.find_first_not_of("0123456789, \t") == std::string::npos;
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw ParseError("non-numeric point line: " + line);
    }
    first = false;
    Point p;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      auto b = cell.find_first_not_of(" \t");
      if (b == std::string::npos) throw ParseError("empty cell in: " + line);
      p.push_back(std::stoull(cell.substr(b)));
    }
    if (!out.empty() && out.front().size() != p.size()) throw ParseError("ragged point file");
    out.push_back(std::move(p));
  }
  return out;
}

inline nlohmann::json points_to_json(const std::vector<std::string>& columns,
                                     const std::vector<Point>& points) {
  return {{"columns", columns}, {"points", points}};
}

inline std::vector<Point> points_from_json(const nlohmann::json& j) {
  const auto& list = j.is_object() ? j.at("points") : j;
  return list.get<std::vector<Point>>();
}

inline nlohmann::json to_json(const SemilinearSet& s) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& l : s.components) comps.push_back({{"base", l.base}, {"generators", l.generators}});
  return {{"dimension", s.dimension}, {"components", comps}};
}

}  // namespace wpcone
