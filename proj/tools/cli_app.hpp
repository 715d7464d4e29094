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

// Command-line frontend. Exit codes: 0 success, 1 failed assertion (a JSON
// diagnostic is written), 2 usage or parse error.

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpcone/wpcone.hpp"

namespace wpcone::cli {

constexpr int kOk = 0;
constexpr int kAssertionFailed = 1;
constexpr int kUsage = 2;

/// Writes `content` to `path` through a temporary file and a rename.
inline void write_atomic(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + tmp.string() + "'");
    f << content;
    if (!f.flush()) throw Error("cannot write '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

inline void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    write_atomic(*path, content);
  } else {
    out << content;
  }
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline std::vector<Point> load_points(const std::string& path) {
  std::string text = detail::read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    try {
      return points_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("malformed point file '" + path + "': " + e.what());
    }
  }
  std::istringstream in(text);
  return read_points_csv(in);
}

inline Point parse_box(const std::string& text) {
  Point box;
  for (const auto& part : detail::split_top_level(text, ',')) {
    try {
      std::size_t used = 0;
      box.push_back(std::stoull(part, &used));
      if (used != part.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("bad --box '" + text + "'");
    }
  }
  return box;
}

struct Options {
  // eval / slice / schreier
  std::string group;
  std::string word;
  std::string regex;
  std::string project;
  std::string format = "csv";
  std::size_t max_len = 0;
  std::size_t budget = 200'000'000;
  // graph
  std::string input;
  std::string mode = "classify";
  // experiment
  std::string id;
  std::optional<std::size_t> n_max;
  std::optional<std::size_t> m_max;
  std::optional<std::string> csv;
  bool timing = false;
  // schreier
  std::string action;
  std::optional<std::string> transducer;
  std::size_t bound = 8;
  // fit
  std::string points;
  std::optional<std::string> exclude;
  std::optional<std::string> box;
  std::size_t components = 2;
  std::size_t generators = 2;
  std::uint64_t coord_bound = 3;
  // shared
  std::optional<std::string> out;
  bool json = false;
};

inline int cmd_eval(const Options& o, std::ostream& out) {
  auto oracle = parse_group_spec(o.group);
  bool identity = oracle.decide(Word::parse(oracle.alphabet_ptr(), o.word));
  if (o.json) {
    out << dump({{"group", o.group}, {"word", o.word}, {"identity", identity}});
  } else {
    out << (identity ? "identity" : "non-identity") << "\n";
  }
  return kOk;
}

inline int cmd_slice(const Options& o, std::ostream& out) {
  auto oracle = parse_group_spec(o.group);
  auto alphabet = oracle.alphabet_ptr();
  auto m = compile(alphabet, o.regex);
  auto proj = Projection::parse(alphabet, o.project);
  auto words = oracle_slice(oracle, m, o.max_len, o.budget);
  std::vector<ParikhVector> vs;
  for (const auto& w : words) vs.push_back(parikh(w));
  auto points = project(vs, proj);
  std::string content;
  if (o.format == "json") {
    content = dump(points_to_json(proj.labels(), points));
  } else {
    std::ostringstream s;
    write_points_csv(s, proj.labels(), points);
    content = s.str();
  }
  emit(out, o.out, content);
  return kOk;
}

inline int cmd_graph(const Options& o, std::ostream& out) {
  auto g = load_graph_file(o.input);
  nlohmann::json j;
  if (o.mode == "classify") {
    j = to_json(classify_raag(g), g);
  } else if (o.mode == "cograph") {
    auto w = find_induced(g, Pattern::P4);
    j = {{"cograph", !w.has_value()}};
    if (w) j["witness"] = to_json(*w, g);
  } else {
    auto result = class_g_membership(g);
    if (auto* cert = std::get_if<ClassGCertificate>(&result)) {
      bool replayed = replay_certificate(*cert, g) == g;
      j = {{"in_class_g", true}, {"certificate", to_json(cert->root, g)}, {"replay_matches", replayed}};
    } else {
      j = {{"in_class_g", false}, {"witness", to_json(std::get<ForbiddenWitness>(result), g)}};
    }
  }
  j["graph"] = to_json(g);
  emit(out, o.out, dump(j));
  return kOk;
}

inline int cmd_experiment(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentReport r;
  if (o.id == "E1") {
    r = run_e1_bs12(o.max_len ? o.max_len : 45);
  } else if (o.id == "E2") {
    r = run_e2_heisenberg(o.max_len ? o.max_len : 30);
  } else if (o.id == "E3") {
    r = run_e3_ap4(o.n_max.value_or(5));
  } else if (o.id == "E4") {
    r = run_e4_f2f2(o.n_max.value_or(2), o.m_max.value_or(2));
  } else if (o.id == "E5") {
    r = run_e5_torus_bundle(o.max_len ? o.max_len : 2601);
  } else {
    throw ParseError("unknown experiment id '" + o.id + "' (expected E1..E5)");
  }
  emit(out, o.out, dump(to_json(r, o.timing)));
  if (o.csv) {
    std::ostringstream s;
    write_points_csv(s, r.columns, r.points);
    write_atomic(*o.csv, s.str());
  }
  if (!r.pass()) {
    err << "experiment " << r.spec.id << " failed\n";
    return kAssertionFailed;
  }
  return kOk;
}

inline int cmd_schreier(const Options& o, std::ostream& out, std::ostream& err) {
  auto super_oracle = parse_group_spec(o.group);
  auto action_json = nlohmann::json::parse(detail::read_file(o.action), nullptr, false);
  if (action_json.is_discarded()) throw ParseError("malformed action file '" + o.action + "'");
  auto action = coset_action_from_json(action_json, super_oracle.alphabet_ptr());
  auto diagram = build_diagram(action);
  auto tree = spanning_tree(diagram);
  auto gens = schreier_generators(diagram, tree);
  auto sub_oracle = pullback_oracle(super_oracle, generator_substitution(gens, super_oracle.alphabet_ptr()));
  std::optional<Transducer> t;
  if (o.transducer) {
    auto tj = nlohmann::json::parse(detail::read_file(*o.transducer), nullptr, false);
    if (tj.is_discarded()) throw ParseError("malformed transducer file '" + *o.transducer + "'");
    t = transducer_from_json(tj);
  } else {
    t = build_transducer(diagram, tree, gens);
  }
  auto report = verify_transduction(*t, sub_oracle, super_oracle, o.bound);

  nlohmann::json tree_json = nlohmann::json::array();
  for (auto i : tree) {
    const auto& e = diagram.edges[i];
    tree_json.push_back({e.source, diagram.alphabet->name(e.letter), e.target});
  }
  nlohmann::json gens_json = nlohmann::json::array();
  for (const auto& g : gens) {
    const auto& e = diagram.edges[g.edge];
    gens_json.push_back({{"name", g.name},
                         {"edge", {e.source, diagram.alphabet->name(e.letter), e.target}},
                         {"word", g.word.to_string()}});
  }
  nlohmann::json j{{"group", o.group},
                   {"bound", o.bound},
                   {"action", to_json(action)},
                   {"diagram", to_json(diagram)},
                   {"tree", tree_json},
                   {"generators", gens_json},
                   {"transducer", to_json(*t)},
                   {"report", to_json(report)}};
  emit(out, o.out, dump(j));
  if (!report.pass) {
    err << "transduction check failed: " << report.failure << "\n";
    return kAssertionFailed;
  }
  return kOk;
}

inline int cmd_fit(const Options& o, std::ostream& out) {
  auto in = load_points(o.points);
  std::vector<Point> excluded;
  nlohmann::json j;
  if (o.exclude) {
    excluded = load_points(*o.exclude);
  } else if (o.box) {
    auto box = parse_box(*o.box);
    in = restrict_to_box(in, box);
    excluded = box_complement(in, box);
    j["box"] = box;
  }
  FitBounds bounds;
  bounds.max_components = o.components;
  bounds.max_generators = o.generators;
  bounds.coord_bound = o.coord_bound;
  auto found = fit_semilinear(in, excluded, bounds);
  j["bounds"] = {{"components", o.components}, {"generators", o.generators}, {"coord_bound", o.coord_bound}};
  j["points_in"] = in.size();
  j["points_out"] = excluded.size();
  j["verdict"] = found ? "found" : "none";
  if (found) j["set"] = to_json(*found);
  emit(out, o.out, dump(j));
  return kOk;
}

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"wpcone: word problems, regular slices and Parikh images"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "decide whether a word is the identity");
  eval->add_option("--group", o.group, "group spec")->required();
  eval->add_option("--word", o.word, "word text")->required();
  eval->add_flag("--json", o.json, "print a JSON verdict");

  auto* slice = app.add_subcommand("slice", "Parikh points of a regular slice of a word problem");
  slice->add_option("--group", o.group, "group spec")->required();
  slice->add_option("--regex", o.regex, "regular expression")->required();
  slice->add_option("--max-len", o.max_len, "maximum word length")->required();
  slice->add_option("--project", o.project, "projection, e.g. t,A or x+y")->required();
  slice->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  slice->add_option("--budget", o.budget, "maximum number of enumerated words");
  slice->add_option("--out", o.out, "output file");

  auto* graph = app.add_subcommand("graph", "RAAG graph classification");
  graph->add_option("--input", o.input, "graph file (JSON or edge list)")->required();
  graph->add_option("--mode", o.mode, "classify, cograph or certificate")
      ->check(CLI::IsMember({"classify", "cograph", "certificate"}));
  graph->add_option("--out", o.out, "output file");

  auto* experiment = app.add_subcommand("experiment", "run a witness pipeline");
  experiment->add_option("--id", o.id, "E1..E5")->required();
  experiment->add_option("--max-len", o.max_len, "length bound (E1, E2, E5)");
  experiment->add_option("--n-max", o.n_max, "n bound (E3, E4)");
  experiment->add_option("--m-max", o.m_max, "m bound (E4)");
  experiment->add_option("--out", o.out, "report file");
  experiment->add_option("--csv", o.csv, "point cloud CSV file");
  experiment->add_flag("--timing", o.timing, "include elapsed time in the report");

  auto* schreier = app.add_subcommand("schreier", "Schreier transducer for a finite-index subgroup");
  schreier->add_option("--group", o.group, "supergroup spec")->required();
  schreier->add_option("--action", o.action, "coset action file")->required();
  schreier->add_option("--bound", o.bound, "verification length bound");
  schreier->add_option("--transducer", o.transducer, "check this transducer instead of the constructed one");
  schreier->add_option("--out", o.out, "report file");

  auto* fit = app.add_subcommand("fit", "bounded semilinear fit of a point set");
  fit->add_option("--points", o.points, "points to include (CSV or JSON)")->required();
  auto* ex = fit->add_option("--exclude", o.exclude, "points to exclude");
  fit->add_option("--box", o.box, "exclude the box complement, e.g. 6,9")->excludes(ex);
  fit->add_option("--components", o.components, "maximum components");
  fit->add_option("--generators", o.generators, "maximum generators per component");
  fit->add_option("--coord-bound", o.coord_bound, "maximum coordinate of bases and generators");
  fit->add_option("--out", o.out, "output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*eval) return cmd_eval(o, out);
    if (*slice) return cmd_slice(o, out);
    if (*graph) return cmd_graph(o, out);
    if (*experiment) return cmd_experiment(o, out, err);
    if (*schreier) return cmd_schreier(o, out, err);
    if (*fit) return cmd_fit(o, out);
  } catch (const BudgetExceeded& e) {
    out << dump({{"error", "budget exceeded"}, {"detail", e.what()}});
    err << "error: " << e.what() << "\n";
    return kAssertionFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace wpcone::cli
