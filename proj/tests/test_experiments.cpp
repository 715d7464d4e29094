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

#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

namespace wpcone {
namespace {

using Points = std::vector<Point>;

Points sorted(std::set<Point> s) { return Points(s.begin(), s.end()); }

// --- independent expected values --------------------------------------------

// Letters of the bs12 alphabet: a, A, t, T.
Points e1_reference(std::size_t max_len) {
  std::set<Point> out;
  for (std::size_t i = 0; i + 1 <= max_len; ++i) {
    for (std::size_t j = 0; i + 1 + j <= max_len; ++j) {
      for (std::size_t k = 0; i + 1 + j + k <= max_len; ++k) {
        std::vector<Letter> w(i, 2);
        w.push_back(0);
        w.insert(w.end(), j, 3);
        w.insert(w.end(), k, 1);
        if (testing::reference_bs12(w)) out.insert({i, k});
      }
    }
  }
  return sorted(out);
}

// a_g^i a_h^j a_g^-k a_h^-l a_z^z as a product of unitriangular matrices.
Points e2_reference(std::size_t max_len) {
  auto elementary = [](int row, int col, long long v) {
    auto m = testing::mat3_identity();
    m[row][col] = v;
    return m;
  };
  std::set<Point> out;
  auto L = static_cast<long long>(max_len);
  for (long long i = 0; i <= L; ++i) {
    for (long long j = 0; i + j <= L; ++j) {
      for (long long k = 0; i + j + k <= L; ++k) {
        for (long long l = 0; i + j + k + l <= L; ++l) {
          for (long long z = 0; i + j + k + l + z <= L; ++z) {
            auto m = testing::mat3_mul(elementary(0, 1, i), elementary(1, 2, j));
            m = testing::mat3_mul(m, elementary(0, 1, -k));
            m = testing::mat3_mul(m, elementary(1, 2, -l));
            m = testing::mat3_mul(m, elementary(0, 2, -z));
            if (m == testing::mat3_identity()) {
              out.insert({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(z)});
            }
          }
        }
      }
    }
  }
  return sorted(out);
}

using testing::letters_of;
using testing::power;

// --- E1 -----------------------------------------------------------------------

TEST(E1, ExamplesAgainstRationalMatrices) {
  for (std::size_t len : {2U, 7U, 12U, 20U}) {
    auto r = run_e1_bs12(len);
    EXPECT_TRUE(r.pass()) << len;
    EXPECT_EQ(r.points, e1_reference(len)) << len;
  }
  EXPECT_EQ(run_e1_bs12(7).points, (Points{{0, 1}, {1, 2}}));
  EXPECT_EQ(run_e1_bs12(2).points, (Points{{0, 1}}));
}

TEST(E1, FullLength) {
  auto r = run_e1_bs12(45);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.points, e1_reference(45));
  Points pow2;
  for (std::uint64_t n = 0; n <= 5; ++n) pow2.push_back({n, std::uint64_t{1} << n});
  EXPECT_EQ(r.points, pow2);
  EXPECT_TRUE(r.certificate_pass);
  ASSERT_TRUE(r.collinear.has_value());
  EXPECT_EQ(*r.collinear, 2U);
  EXPECT_EQ(r.columns, (std::vector<std::string>{"t", "A"}));
}

TEST(E1, RejectsTinyBound) { EXPECT_THROW(run_e1_bs12(1), Error); }

// --- E2 -----------------------------------------------------------------------

TEST(E2, ExamplesAgainstMatrices) {
  for (std::size_t len : {4U, 9U, 16U}) {
    auto r = run_e2_heisenberg(len);
    EXPECT_TRUE(r.pass()) << len;
    EXPECT_EQ(r.points, e2_reference(len)) << len;
    EXPECT_EQ(r.fit.verdict, "skipped");
  }
  auto r = run_e2_heisenberg(16);
  EXPECT_TRUE(std::count(r.points.begin(), r.points.end(), Point{1, 2}));
  EXPECT_TRUE(std::count(r.points.begin(), r.points.end(), Point{0, 0}));
}

TEST(E2, FullLengthWithFit) {
  auto r = run_e2_heisenberg(30);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.points, e2_reference(30));
  std::set<Point> closed;
  for (std::uint64_t m = 0; m <= 30; ++m) {
    for (std::uint64_t n = 0; 2 * m + 2 * n + m * n <= 30; ++n) closed.insert({m, m * n});
  }
  EXPECT_EQ(r.points, sorted(closed));
  EXPECT_TRUE(r.certificate_pass);
  EXPECT_EQ(r.fit.verdict, "none");
  EXPECT_EQ(r.fit.box, (Point{6, 9}));
  EXPECT_EQ(r.fit.bounds.max_components, 2U);
  EXPECT_EQ(r.fit.bounds.max_generators, 2U);
  EXPECT_EQ(r.fit.bounds.coord_bound, 3U);
}

// --- E3 -----------------------------------------------------------------------

// The A(P4) words over x = ab⁻¹, y = bc⁻¹, z = cd⁻¹, spelled directly in
// a, b, c, d and checked with the piling solver.
TEST(E3, IdentitiesAgainstPilingSolver) {
  auto g = load_graph_file(testing::data_path("p4.json"));
  auto a = SymmetricAlphabet::make(g.names());
  auto commute = [&](std::size_t u, std::size_t v) { return g.adjacent(u, v); };
  auto trivial = [&](const std::string& text) { return testing::reference_raag_piles(letters_of(a, text), commute, 4); };
  auto sub = testing::xyz_to_abcd;
  auto inverse = testing::inverse_text;
  for (long long n = 1; n <= 5; ++n) {
    EXPECT_TRUE(trivial(sub(testing::p4_u(n)) + inverse(power("b", 2 * n - 2) + "ad" + power("C", 2 * n))));
    EXPECT_TRUE(trivial(sub(testing::p4_v(n)) + inverse(power("b", 2 * n) + "AD" + power("C", 2 * n - 2))));
    auto word = testing::p4_combined(n);
    EXPECT_TRUE(trivial(power("ad", n) + power("AD", n) + inverse(sub(word)))) << n;
    EXPECT_FALSE(trivial(power("ad", n) + power("AD", n) + inverse(sub(word + "y"))));

    auto xyz = SymmetricAlphabet::make({"x", "y", "z"});
    auto w = letters_of(xyz, word);
    auto reduced = testing::naive_free_reduce(w, *xyz);
    EXPECT_EQ(reduced, w) << "formula word is freely reduced";
    EXPECT_EQ(std::count(w.begin(), w.end(), 2), 2 * n * n);
  }
}

TEST(E3, ReportMatches) {
  auto r = run_e3_ap4(5);
  EXPECT_TRUE(r.pass());
  Points expected;
  for (std::uint64_t n = 1; n <= 5; ++n) expected.push_back({n, 2 * n * n});
  EXPECT_EQ(r.points, expected);
  EXPECT_TRUE(r.certificate_pass);
  const auto& per_n = r.details.at("per_n");
  EXPECT_EQ(per_n.at(0).at("y_positive"), 2);
  EXPECT_EQ(per_n.at(2).at("y_positive"), 18);
  EXPECT_THROW(run_e3_ap4(0), Error);
}

// --- E4 -----------------------------------------------------------------------

using testing::expand_fiber_word;
using testing::heisenberg_centre;

TEST(E4, MinimalTCountIndependentlyBracketed) {
  auto ab = SymmetricAlphabet::make({"a", "b"});
  auto r = run_e4_f2f2(2, 2);
  ASSERT_TRUE(r.pass());
  for (const auto& pair : r.details.at("per_pair")) {
    auto n = pair.at("n").get<long long>();
    auto m = pair.at("m").get<long long>();
    auto witness = pair.at("witness").get<std::string>();
    auto count = pair.at("min_t_count").get<long long>();
    EXPECT_EQ(count, n * m);
    // upper bound: the witness has nm letters t^±1 and represents
    // (b^m a^n b^-m a^-n, 1)
    EXPECT_EQ(std::count_if(witness.begin(), witness.end(), [](char ch) { return ch == 't' || ch == 'T'; }), n * m);
    auto [first, second] = expand_fiber_word(witness);
    auto target = letters_of(ab, power("a", n) + power("b", m) + power("A", n) + power("B", m));
    first.insert(first.end(), target.begin(), target.end());
    EXPECT_TRUE(testing::naive_free_reduce(first, *ab).empty()) << witness;
    EXPECT_TRUE(testing::naive_free_reduce(second, *ab).empty()) << witness;
    // lower bound: the commutator's central coordinate is nm
    EXPECT_EQ(boost::multiprecision::abs(heisenberg_centre(target)), BigInt(n * m));
  }
}

TEST(E4, SpecExamples) {
  auto r = run_e4_f2f2(2, 1);
  ASSERT_TRUE(r.pass());
  auto find = [&](long long n, long long m) {
    for (const auto& p : r.details.at("per_pair")) {
      if (p.at("n") == n && p.at("m") == m) return p;
    }
    return nlohmann::json();
  };
  EXPECT_EQ(find(1, 1).at("min_t_count"), 1);
  EXPECT_EQ(find(1, 1).at("witness"), "T");
  EXPECT_EQ(find(1, 0).at("min_t_count"), 0);
  EXPECT_EQ(find(2, 1).at("min_t_count"), 2);
  EXPECT_TRUE(r.certificate_pass);
}

TEST(E4, ThreeByOne) {
  auto r = run_e4_f2f2(3, 1);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(std::count(r.points.begin(), r.points.end(), Point{3, 3}));
}

TEST(E4, FoxBoundOnCommutators) {
  auto a = SymmetricAlphabet::make({"a", "b"});
  for (long long n = 0; n <= 4; ++n) {
    for (long long m = 0; m <= 4; ++m) {
      auto w = letters_of(a, power("a", n) + power("b", m) + power("A", n) + power("B", m));
      EXPECT_EQ(fox_commutator_lower_bound(w), BigInt(n * m));
    }
  }
  EXPECT_THROW(run_e4_f2f2(4, 1), Error);
}

// --- E5 -----------------------------------------------------------------------

TEST(E5, GenericSliceAgainstAffineMatrices) {
  // t^i x T^j w with w over {x, y, X, Y}, total length <= 9: the least |w|
  // for each i, from the 3x3 integer reference.
  const std::array<std::array<long long, 2>, 2> cat{{{2, 1}, {1, 1}}};
  std::map<std::uint64_t, std::uint64_t> least;
  const std::size_t L = 9;
  for (std::size_t i = 0; i + 1 <= L; ++i) {
    for (std::size_t j = 0; i + 1 + j <= L; ++j) {
      for (std::size_t k = 0; i + 1 + j + k <= L; ++k) {
        testing::for_each_sequence(4, k, [&](const std::vector<Letter>& tail) {
          std::vector<Letter> w(i, 4);
          w.push_back(0);
          w.insert(w.end(), j, 5);
          w.insert(w.end(), tail.begin(), tail.end());
          if (!testing::reference_torus_bundle(w, cat)) return;
          auto it = least.find(i);
          if (it == least.end() || it->second > k) least[i] = k;
        });
      }
    }
  }
  // powers of the matrix computed directly
  std::map<std::uint64_t, std::uint64_t> l1;
  long long vx = 1;
  long long vy = 0;
  for (std::uint64_t n = 0; n <= 8; ++n) {
    l1[n] = static_cast<std::uint64_t>(std::llabs(vx) + std::llabs(vy));
    long long nx = 2 * vx + vy;
    long long ny = vx + vy;
    vx = nx;
    vy = ny;
  }
  ASSERT_FALSE(least.empty());
  for (auto [i, k] : least) EXPECT_EQ(k, l1[i]) << i;
  EXPECT_EQ(l1[1], 3U);
  EXPECT_EQ(l1[4], 55U);

  auto r = run_e5_torus_bundle(2601);
  EXPECT_TRUE(r.pass());
  Points expected;
  for (std::uint64_t n = 0; n <= 8; ++n) expected.push_back({n, l1[n]});
  EXPECT_EQ(r.points, expected);
  EXPECT_TRUE(r.certificate_pass);
  ASSERT_TRUE(r.collinear.has_value());
  EXPECT_LE(*r.collinear, 2U);
}

TEST(E5, ShortBoundsAndValidation) {
  auto r = run_e5_torus_bundle(4);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.points, (Points{{0, 1}}));
  EXPECT_THROW(run_e5_torus_bundle(1), Error);
  EXPECT_THROW(run_e5_torus_bundle(100, Matrix2{{{{1, 1}, {0, 1}}}}), Error);
}

// --- reports --------------------------------------------------------------------

TEST(Reports, DeterministicJson) {
  EXPECT_EQ(to_json(run_e1_bs12(20)).dump(), to_json(run_e1_bs12(20)).dump());
  EXPECT_EQ(to_json(run_e2_heisenberg(14)).dump(), to_json(run_e2_heisenberg(14)).dump());
  EXPECT_EQ(to_json(run_e3_ap4(3)).dump(), to_json(run_e3_ap4(3)).dump());
  EXPECT_EQ(to_json(run_e4_f2f2(2, 1)).dump(), to_json(run_e4_f2f2(2, 1)).dump());
  EXPECT_EQ(to_json(run_e5_torus_bundle(200)).dump(), to_json(run_e5_torus_bundle(200)).dump());
  auto j = to_json(run_e1_bs12(10));
  EXPECT_FALSE(j.contains("elapsed_seconds"));
  EXPECT_TRUE(to_json(run_e1_bs12(10), true).contains("elapsed_seconds"));
}

TEST(Reports, SpecsResolve) {
  for (const auto& s : experiment_specs()) {
    EXPECT_NO_THROW(GrowthCertificate::parse(s.certificate)) << s.id;
    EXPECT_FALSE(s.slice.empty());
    EXPECT_FALSE(s.oracle.empty());
  }
  EXPECT_THROW(experiment_spec("E9"), Error);
}

}  // namespace
}  // namespace wpcone
