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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cli_app.hpp"
#include "test_support.hpp"

namespace wpcone {
namespace {

namespace fs = std::filesystem;
using testing::data_path;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("wpcone_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
}

std::set<Point> csv_points(const std::string& text) {
  std::istringstream in(text);
  auto ps = read_points_csv(in);
  return {ps.begin(), ps.end()};
}

// --- eval -------------------------------------------------------------------

TEST(Eval, Examples) {
  EXPECT_EQ(run({"eval", "--group", "bs12", "--word", "taTAA"}).out, "identity\n");
  EXPECT_EQ(run({"eval", "--group", "free:2", "--word", ""}).out, "identity\n");
  auto h = run({"eval", "--group", "heisenberg", "--word", "a_z"});
  EXPECT_EQ(h.code, 0);
  EXPECT_EQ(h.out, "non-identity\n");
}

TEST(Eval, JsonVerdict) {
  auto r = run({"eval", "--group", "bs12", "--word", "taTAA", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["identity"], true);
  EXPECT_EQ(j["group"], "bs12");
}

TEST(Eval, UsageErrors) {
  EXPECT_EQ(run({"eval", "--group", "nosuchgroup", "--word", "a"}).code, 2);
  EXPECT_EQ(run({"eval", "--group", "free:2", "--word", "a?"}).code, 2);
  EXPECT_EQ(run({"eval", "--group", "free:2"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  auto r = run({"eval", "--group", "nosuchgroup", "--word", "a"});
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Eval, HelpExitsZero) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("schreier"), std::string::npos);
}

// --- slice ------------------------------------------------------------------

TEST(Slice, Bs12MatchesExperimentPoints) {
  auto r = run({"slice", "--group", "bs12", "--regex", "t*a(T)*(A)*", "--max-len", "45", "--project", "t,A"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,A");
  auto e1 = run_e1_bs12(45);
  EXPECT_EQ(csv_points(r.out), std::set<Point>(e1.points.begin(), e1.points.end()));
  std::set<Point> expected;
  for (std::uint64_t n = 0; n <= 5; ++n) expected.insert({n, std::uint64_t{1} << n});
  EXPECT_EQ(csv_points(r.out), expected);
}

TEST(Slice, TrivialGroup) {
  auto r = run({"slice", "--group", "trivial:1", "--regex", "a*", "--max-len", "3", "--project", "a"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(csv_points(r.out), (std::set<Point>{{0}, {1}, {2}, {3}}));
  EXPECT_EQ(r.out.substr(0, 2), "a\n");
}

TEST(Slice, HeisenbergMatchesExperimentPoints) {
  const auto& spec = experiment_spec("E2");
  auto r = run({"slice", "--group", spec.oracle, "--regex", spec.slice, "--max-len", "30", "--project",
                spec.projection});
  ASSERT_EQ(r.code, 0) << r.err;
  auto e2 = run_e2_heisenberg(30);
  EXPECT_EQ(csv_points(r.out), std::set<Point>(e2.points.begin(), e2.points.end()));
}

TEST(Slice, HeaderNamesSelectors) {
  auto r = run({"slice", "--group", "free:2", "--regex", "(a+b)*(A+B)*", "--max-len", "4", "--project", "a+b,B"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "a+b,B");
}

TEST(Slice, JsonFormatAndOutFile) {
  TempDir dir;
  auto path = dir.file("points.json");
  auto r = run({"slice", "--group", "trivial:1", "--regex", "a*", "--max-len", "2", "--project", "a", "--format",
                "json", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  auto ps = points_from_json(nlohmann::json::parse(slurp(path)));
  EXPECT_EQ(std::set<Point>(ps.begin(), ps.end()), (std::set<Point>{{0}, {1}, {2}}));
  EXPECT_FALSE(fs::exists(path + ".tmp"));
}

TEST(Slice, BudgetExceededIsAnAssertionFailure) {
  TempDir dir;
  auto path = dir.file("partial.csv");
  auto r = run({"slice", "--group", "free:2", "--regex", "(a+b+A+B)*", "--max-len", "10", "--project", "a",
                "--budget", "100", "--out", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["error"], "budget exceeded");
  EXPECT_FALSE(fs::exists(path));
}

TEST(Slice, UsageErrors) {
  EXPECT_EQ(run({"slice", "--group", "bs12", "--regex", "t*(", "--max-len", "3", "--project", "t"}).code, 2);
  EXPECT_EQ(run({"slice", "--group", "bs12", "--regex", "t*", "--max-len", "3", "--project", "q"}).code, 2);
  EXPECT_EQ(
      run({"slice", "--group", "bs12", "--regex", "t*", "--max-len", "3", "--project", "t", "--format", "xml"}).code,
      2);
  EXPECT_EQ(run({"slice", "--group", "bs12", "--regex", "t*", "--max-len", "x", "--project", "t"}).code, 2);
}

// --- graph ------------------------------------------------------------------

TEST(GraphCmd, P4IsNotMcf) {
  auto r = run({"graph", "--input", data_path("p4.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "NotMCF");
  EXPECT_EQ(j["witness"]["kind"], "P4");
  EXPECT_EQ(j["obstruction"], "A(P4)");
  auto vs = j["witness"]["vertices"].get<std::vector<std::string>>();
  EXPECT_EQ(std::set<std::string>(vs.begin(), vs.end()), (std::set<std::string>{"a", "b", "c", "d"}));
}

TEST(GraphCmd, C4ExhibitsF2xF2) {
  auto j = nlohmann::json::parse(run({"graph", "--input", data_path("c4.json")}).out);
  EXPECT_EQ(j["verdict"], "NotMCF");
  EXPECT_EQ(j["obstruction"], "F2xF2");
}

// Classified by its induced 4-vertex subgraphs, checked here directly.
TEST(GraphCmd, TrianglePlusPendant) {
  auto g = load_graph_file(data_path("k3_pendant.txt"));
  bool forbidden = false;
  std::array<std::size_t, 4> q{};
  for (q[0] = 0; q[0] < g.size(); ++q[0])
    for (q[1] = 0; q[1] < g.size(); ++q[1])
      for (q[2] = 0; q[2] < g.size(); ++q[2])
        for (q[3] = 0; q[3] < g.size(); ++q[3])
          if (std::set<std::size_t>(q.begin(), q.end()).size() == 4)
            forbidden = forbidden || testing::is_induced_pattern(g, q, false) || testing::is_induced_pattern(g, q, true);
  ASSERT_FALSE(forbidden);
  auto j = nlohmann::json::parse(run({"graph", "--input", data_path("k3_pendant.txt")}).out);
  EXPECT_EQ(j["verdict"], "InClassG");
  EXPECT_TRUE(j.contains("certificate"));
}

TEST(GraphCmd, K1IsALeaf) {
  auto j = nlohmann::json::parse(run({"graph", "--input", data_path("k1.json")}).out);
  EXPECT_EQ(j["verdict"], "InClassG");
  EXPECT_EQ(j["certificate"], nlohmann::json::parse(R"({"leaf":"v"})"));
}

TEST(GraphCmd, CographAndCertificateModes) {
  auto p4 = nlohmann::json::parse(run({"graph", "--input", data_path("p4.json"), "--mode", "cograph"}).out);
  EXPECT_EQ(p4["cograph"], false);
  EXPECT_EQ(p4["witness"]["kind"], "P4");
  auto c4 = nlohmann::json::parse(run({"graph", "--input", data_path("c4.json"), "--mode", "cograph"}).out);
  EXPECT_EQ(c4["cograph"], true);
  auto k = nlohmann::json::parse(run({"graph", "--input", data_path("k3_pendant.txt"), "--mode", "certificate"}).out);
  EXPECT_EQ(k["in_class_g"], true);
  EXPECT_EQ(k["replay_matches"], true);
  auto c = nlohmann::json::parse(run({"graph", "--input", data_path("c4.json"), "--mode", "certificate"}).out);
  EXPECT_EQ(c["in_class_g"], false);
  EXPECT_EQ(c["witness"]["kind"], "C4");
}

TEST(GraphCmd, MalformedInput) {
  TempDir dir;
  auto bad = dir.file("bad.json");
  write_file(bad, R"({"vertices": ["a"], "edges": [["a", "zz"]]})");
  EXPECT_EQ(run({"graph", "--input", bad}).code, 2);
  EXPECT_EQ(run({"graph", "--input", dir.file("missing.json")}).code, 2);
  EXPECT_EQ(run({"graph", "--input", data_path("p4.json"), "--mode", "other"}).code, 2);
}

// --- experiment -------------------------------------------------------------

TEST(ExperimentCmd, E1Passes) {
  TempDir dir;
  auto csv = dir.file("e1.csv");
  auto r = run({"experiment", "--id", "E1", "--max-len", "45", "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["pass"], true);
  std::set<Point> expected;
  for (std::uint64_t n = 0; n <= 5; ++n) expected.insert({n, std::uint64_t{1} << n});
  EXPECT_EQ(csv_points(slurp(csv)), expected);
}

TEST(ExperimentCmd, E3PointsAreTwoNSquared) {
  auto r = run({"experiment", "--id", "E3", "--n-max", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["pass"], true);
  std::set<Point> expected;
  for (std::uint64_t n = 1; n <= 4; ++n) expected.insert({n, 2 * n * n});
  auto ps = points_from_json(j["points"]);
  std::set<Point> got(ps.begin(), ps.end());
  for (const auto& p : expected) EXPECT_TRUE(got.count(p)) << p[0];
}

TEST(ExperimentCmd, BoundBelowMinimumIsUsageError) {
  auto r = run({"experiment", "--id", "E1", "--max-len", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_EQ(run({"experiment", "--id", "E9"}).code, 2);
  EXPECT_EQ(run({"experiment", "--id", "E4", "--n-max", "4"}).code, 2);
}

TEST(ExperimentCmd, TimingOnlyWhenRequested) {
  auto plain = nlohmann::json::parse(run({"experiment", "--id", "E5", "--max-len", "200"}).out);
  auto timed = nlohmann::json::parse(run({"experiment", "--id", "E5", "--max-len", "200", "--timing"}).out);
  EXPECT_FALSE(plain.contains("elapsed_seconds"));
  EXPECT_TRUE(timed.contains("elapsed_seconds"));
}

// --- schreier ---------------------------------------------------------------

TEST(SchreierCmd, TwoZPasses) {
  auto r = run({"schreier", "--group", "free:1", "--action", data_path("z_index2.json"), "--bound", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["report"]["pass"], true);
  for (const auto* key : {"action", "diagram", "tree", "generators", "transducer"}) EXPECT_TRUE(j.contains(key));
}

TEST(SchreierCmd, DegreeOnePasses) {
  auto r = run({"schreier", "--group", "free:2", "--action", data_path("f2_degree1.json"), "--bound", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["tree"].size(), 0U);
}

TEST(SchreierCmd, CorruptedTransducerFailsWithWitness) {
  auto r = run({"schreier", "--group", "free:1", "--action", data_path("z_index2.json"), "--transducer",
                data_path("z_index2_mutated_transducer.json")});
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["report"]["pass"], false);
  EXPECT_EQ(j["report"]["witness"], nlohmann::json::parse(R"(["b0","aA"])"));
  EXPECT_FALSE(r.err.empty());
}

TEST(SchreierCmd, IntransitiveActionIsRejected) {
  TempDir dir;
  auto path = dir.file("split.json");
  write_file(path, R"({"degree": 2, "perms": {"a": [0, 1]}})");
  EXPECT_EQ(run({"schreier", "--group", "free:1", "--action", path}).code, 2);
}

// --- fit --------------------------------------------------------------------

TEST(FitCmd, LineIsFound) {
  TempDir dir;
  auto pts = dir.file("line.csv");
  write_file(pts, "x,y\n0,0\n1,2\n2,4\n3,6\n");
  auto r = run({"fit", "--points", pts, "--box", "3,6"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "found");
  EXPECT_EQ(j["points_in"], 4);
  EXPECT_EQ(j["points_out"], 4 * 7 - 4);
}

TEST(FitCmd, HeisenbergSliceHasNoSmallFit) {
  TempDir dir;
  auto csv = dir.file("e2.csv");
  ASSERT_EQ(run({"experiment", "--id", "E2", "--max-len", "30", "--csv", csv}).code, 0);
  auto r = run({"fit", "--points", csv, "--box", "6,9", "--components", "2", "--generators", "2", "--coord-bound",
                "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "none");
}

TEST(FitCmd, ExplicitExclusions) {
  TempDir dir;
  auto in = dir.file("in.json");
  auto ex = dir.file("ex.csv");
  write_file(in, points_to_json({"x"}, {{0}, {2}, {4}}).dump());
  write_file(ex, "x\n1\n3\n");
  auto j = nlohmann::json::parse(run({"fit", "--points", in, "--exclude", ex}).out);
  EXPECT_EQ(j["verdict"], "found");
  EXPECT_EQ(j["points_out"], 2);
  EXPECT_EQ(run({"fit", "--points", in, "--exclude", ex, "--box", "4"}).code, 2);
  EXPECT_EQ(run({"fit", "--points", in, "--box", "4,x"}).code, 2);
}

// --- determinism ------------------------------------------------------------

TEST(Determinism, RepeatedInvocationsAreByteIdentical) {
  TempDir dir;
  auto pts = dir.file("line.csv");
  write_file(pts, "0,0\n1,2\n2,4\n");
  const std::vector<std::vector<std::string>> invocations = {
      {"eval", "--group", "heisenberg", "--word", "a_g a_h a_g' a_h' a_z", "--json"},
      {"slice", "--group", "bs12", "--regex", "t*a(T)*(A)*", "--max-len", "20", "--project", "t,A"},
      {"slice", "--group", "heisenberg", "--regex", "a_g* a_h* a_g'* a_h'* a_z*", "--max-len", "12", "--project",
       "a_g,a_z", "--format", "json"},
      {"graph", "--input", data_path("k3_pendant.txt")},
      {"graph", "--input", data_path("c4.json"), "--mode", "certificate"},
      {"experiment", "--id", "E3", "--n-max", "3"},
      {"experiment", "--id", "E4", "--n-max", "1", "--m-max", "1"},
      {"schreier", "--group", "free:2", "--action", data_path("f2_index3.json"), "--bound", "4"},
      {"fit", "--points", pts, "--box", "2,4"},
  };
  for (const auto& args : invocations) {
    auto a = run(args);
    auto b = run(args);
    EXPECT_EQ(a.code, 0) << args[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
    EXPECT_FALSE(a.out.empty()) << args[0];
  }
}

TEST(Determinism, OutFileMatchesStdout) {
  TempDir dir;
  auto path = dir.file("report.json");
  std::vector<std::string> args{"experiment", "--id", "E1", "--max-len", "20"};
  auto to_stdout = run(args);
  args.insert(args.end(), {"--out", path});
  auto to_file = run(args);
  EXPECT_TRUE(to_file.out.empty());
  EXPECT_EQ(slurp(path), to_stdout.out);
}

}  // namespace
}  // namespace wpcone
