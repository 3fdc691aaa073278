// dpcolor: command-line front end for the DP-colouring toolkit.
//
// Exit codes: 0 success, 1 class or precondition failure, 2 UNSAT,
// 3 budget exceeded, 4 internal assertion or a graph contradicting the theorem.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpcolor/coloring.hpp"
#include "dpcolor/cover.hpp"
#include "dpcolor/discharging.hpp"
#include "dpcolor/error.hpp"
#include "dpcolor/generator.hpp"
#include "dpcolor/io.hpp"
#include "dpcolor/plane_graph.hpp"
#include "dpcolor/reducible.hpp"
#include "dpcolor/tree_colorers.hpp"

namespace fs = std::filesystem;
using namespace dpcolor;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kClass = 1, kUnsat = 2, kBudget = 3, kInternal = 4 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SubproblemUnsat: return kUnsat;
    case ErrorKind::SolverTooLarge:
    case ErrorKind::GenerationStalled: return kBudget;
    case ErrorKind::LemmaViolated:
    case ErrorKind::InternalAssertion: return kInternal;
    default: return kClass;
  }
}

struct Config {
  int m = 1;
  std::uint64_t seed = 0;
  double budget_sec = 60.0;
  std::string out;
  bool strict = false;
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty())
    std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
  else
    write_text_file(cfg.out, text);
}

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

ojson class_json(const ClassReport& r) {
  ojson chords = ojson::array();
  for (const Edge& e : r.outer_chords) chords.push_back({e.u, e.v});
  return ojson{{"in_class", r.in_class()},
               {"connected", r.connected},
               {"two_connected", r.two_connected},
               {"four_cycle", r.four_cycle ? ojson(*r.four_cycle) : ojson(nullptr)},
               {"five_cycle", r.five_cycle ? ojson(*r.five_cycle) : ojson(nullptr)},
               {"outer_is_cycle", r.outer_is_cycle},
               {"outer_is_good", r.outer_is_good},
               {"outer_chords", chords}};
}

int cmd_check_class(const Config& cfg, const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      auto more = json_files(in);
      files.insert(files.end(), more.begin(), more.end());
    } else {
      files.emplace_back(in);
    }
  }
  int members = 0;
  std::string out;
  for (const auto& f : files) {
    ojson line = class_json(check_class_p45(graph_from_json(read_text_file(f))));
    if (files.size() > 1 || inputs.size() > 1 || fs::is_directory(inputs.front())) line["file"] = f.filename().string();
    members += line["in_class"].get<bool>();
    out += line.dump() + "\n";
  }
  if (files.size() > 1) out += ojson{{"files", files.size()}, {"in_class", members}}.dump() + "\n";
  emit(cfg, out);
  return members == static_cast<int>(files.size()) ? kOk : kClass;
}

int cmd_solve(const Config& cfg, const std::string& graph_file, const std::string& cover_file,
              const std::string& boundary_file) {
  const PlaneGraph g = graph_from_json(read_text_file(graph_file));
  const Cover c = cover_from_json(read_text_file(cover_file));
  const int n = g.vertex_count();
  require(c.vertex_count() == n, ErrorKind::PreconditionViolated, "cover and graph disagree on the vertex count");
  const auto bad = validate_cover(g.graph(), c);
  require(bad.empty(), ErrorKind::PreconditionViolated, bad.empty() ? "" : "invalid cover: " + bad.front().detail);
  MultiColoring fixed(n);
  if (!boundary_file.empty()) {
    auto parsed = coloring_from_json(read_text_file(boundary_file), n);
    require(parsed.m == cfg.m, ErrorKind::PreconditionViolated, "boundary colouring is for a different m");
    fixed = std::move(parsed.coloring);
  }
  const FoldSpec spec{cfg.m, c.sizes(), std::vector<int>(static_cast<std::size_t>(n), 2 * cfg.m)};
  SolveOptions opts;
  opts.budget_sec = cfg.budget_sec;
  const SolveResult res = exhaustive_solve(g.graph(), c, spec, fixed, opts);
  if (res.status == SolveStatus::Timeout) {
    std::cerr << "timeout after " << res.nodes << " nodes\n";
    return kBudget;
  }
  if (res.status == SolveStatus::Unsat) {
    std::cerr << "UNSAT (" << res.nodes << " nodes)\n";
    return kUnsat;
  }
  require(verify_coloring(g.graph(), c, spec, res.coloring).empty(), ErrorKind::InternalAssertion,
          "solver output fails verification");
  emit(cfg, coloring_to_json(res.coloring, cfg.m));
  return kOk;
}

int cmd_tree_color(const Config& cfg, const std::string& lists_file, std::optional<int> m_override) {
  ListAssignment a = list_assignment_from_json(read_text_file(lists_file));
  if (m_override) a.m = *m_override;
  const Graph tree = shape_graph(a.shape);
  const Cover c = cover_from_lists(tree, a.lists);
  const FoldSpec spec{a.m, shape_sizes(a.shape, a.m), shape_folds(a.shape, a.m)};
  const TreeColoring tc = dispatch_tree_colorer(a.shape, c, spec);
  std::vector<ColorList> names(a.lists.size());
  for (std::size_t r = 0; r < a.lists.size(); ++r) {
    auto sorted = a.lists[r];
    std::sort(sorted.begin(), sorted.end());
    for (int i : tc.coloring.colors(static_cast<Vertex>(r))) names[r].push_back(sorted[static_cast<std::size_t>(i)]);
  }
  require(check_list_coloring(a.shape, a.lists, names, a.m).empty(), ErrorKind::InternalAssertion,
          "tree colouring fails the list check");
  ojson out = ojson::parse(list_coloring_to_json(a.shape, a.m, names));
  out["case"] = tc.trace.case_taken;
  out["fallback_used"] = tc.trace.fallback_used;
  emit(cfg, out.dump());
  return kOk;
}

int cmd_meta_audit(const Config& cfg, const std::string& dir) {
  const auto files = json_files(dir);
  std::string out;
  int counterexamples = 0, audited = 0, skipped = 0;
  std::map<std::string, int> tally;
  for (const auto& f : files) {
    ojson line{{"file", f.filename().string()}};
    try {
      const PlaneGraph g = graph_from_json(read_text_file(f));
      const Verdict v = meta_audit(g);
      ++audited;
      ++tally[std::string(to_string(v.kind))];
      counterexamples += v.kind == VerdictKind::PaperCounterexample;
      line["verdict"] = to_string(v.kind);
      line["reports"] = v.reports.size();
      std::vector<std::string> kinds;
      for (const auto& r : v.reports) kinds.emplace_back(to_string(r.kind));
      kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
      line["kinds"] = kinds;
      line["audit_failures"] = v.audit.failures.size();
    } catch (const Error& e) {
      ++skipped;
      line["skipped"] = e.what();
    }
    out += line.dump() + "\n";
  }
  ojson summary{{"graphs", files.size()}, {"audited", audited}, {"skipped", skipped}, {"verdicts", tally}};
  if (files.empty()) summary["note"] = "no inputs";
  out += summary.dump() + "\n";
  emit(cfg, out);
  return counterexamples > 0 ? kInternal : kOk;
}

int cmd_gen(const Config& cfg, const GeneratorOptions& opts, int count) {
  if (count == 1 && (cfg.out.empty() || fs::path(cfg.out).extension() == ".json")) {
    emit(cfg, graph_to_json(generate_graph(opts, cfg.seed)));
    return kOk;
  }
  require(!cfg.out.empty(), ErrorKind::PreconditionViolated, "--out must name a directory for a batch");
  fs::create_directories(cfg.out);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = cfg.seed + static_cast<std::uint64_t>(i);
    write_text_file(fs::path(cfg.out) / ("gen_" + std::to_string(s) + ".json"), graph_to_json(generate_graph(opts, s)));
  }
  return kOk;
}

int cmd_reducible(const Config& cfg, const std::string& graph_file, bool explain) {
  const PlaneGraph g = graph_from_json(read_text_file(graph_file));
  const auto reports = find_reducible(g);
  std::string out;
  for (const auto& r : reports) {
    ojson line = ojson::parse(report_to_json(r));
    if (explain && !is_trivial_property(r.kind)) {
      try {
        const ReductionPlan p = explain_reduction(r, g);
        ojson plan{{"deleted", p.deleted},
                   {"colorer", to_string(p.colorer)},
                   {"roles", p.roles},
                   {"residual_multiples", p.residual_multiples}};
        if (p.identification)
          plan["identify"] = {p.identification->x, p.identification->y, p.identification->z};
        line["plan"] = plan;
      } catch (const Error& e) {
        line["plan"] = e.what();
      }
    }
    out += line.dump() + "\n";
  }
  emit(cfg, out);
  return kOk;
}

int cmd_ledger(const Config& cfg, const std::string& graph_file) {
  const PlaneGraph g = graph_from_json(read_text_file(graph_file));
  const ChargeLedger l = apply_rules(g, initial_charges(g));
  emit(cfg, ledger_to_json(g, l, audit_final(g, l)));
  return kOk;
}

int cmd_reduce(const Config& cfg, const std::string& graph_file, const std::string& cover_file,
               const std::string& boundary_file, int index) {
  const PlaneGraph g = graph_from_json(read_text_file(graph_file));
  const Cover c = cover_from_json(read_text_file(cover_file));
  const auto parsed = coloring_from_json(read_text_file(boundary_file), g.vertex_count());
  std::vector<ConfigReport> usable;
  for (const auto& r : find_reducible(g))
    if (!is_trivial_property(r.kind) && r.kind != ConfigKind::SplitPath2NonTriangle && r.kind != ConfigKind::SplitPath3)
      usable.push_back(r);
  require(index >= 0 && index < static_cast<int>(usable.size()), ErrorKind::PreconditionViolated,
          "no reducible configuration with a reduction at index " + std::to_string(index));
  ReductionOptions opts;
  opts.budget_sec = cfg.budget_sec;
  const ReductionOutcome res =
      execute_reduction(explain_reduction(usable[static_cast<std::size_t>(index)], g), g, c, parsed.coloring, cfg.m, opts);
  emit(cfg, coloring_to_json(res.coloring, cfg.m));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DP-colouring toolkit for plane graphs without 4- and 5-cycles"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output file (stdout if omitted)");
  };

  std::vector<std::string> class_inputs;
  auto* check = app.add_subcommand("check-class", "Test class membership of graph files or directories");
  check->add_option("inputs", class_inputs)->required();
  common(check);

  std::string graph_file, cover_file, boundary_file;
  auto* solve = app.add_subcommand("solve", "Exhaustive (H,2m)-colouring extending an optional partial colouring");
  solve->add_option("graph", graph_file)->required()->check(CLI::ExistingFile);
  solve->add_option("cover", cover_file)->required()->check(CLI::ExistingFile);
  solve->add_option("--boundary", boundary_file)->check(CLI::ExistingFile);
  solve->add_option("--m", cfg.m)->check(CLI::PositiveNumber);
  solve->add_option("--budget-sec", cfg.budget_sec);
  common(solve);

  std::string lists_file;
  std::optional<int> tree_m;
  auto* tree = app.add_subcommand("tree-color", "Run a tree-lemma colorer on a list assignment");
  tree->add_option("lists", lists_file)->required()->check(CLI::ExistingFile);
  tree->add_option("--m", tree_m, "Override the file's m")->check(CLI::PositiveNumber);
  common(tree);

  std::string audit_dir;
  auto* audit = app.add_subcommand("meta-audit", "Discharging meta-audit over a directory of graphs");
  audit->add_option("dir", audit_dir, "Corpus directory (default: $DPCOLOR_CORPUS)");
  common(audit);

  GeneratorOptions gen_opts;
  int gen_count = 1;
  auto* gen = app.add_subcommand("gen", "Generate class members by rejection sampling");
  gen->add_option("--n", gen_opts.target_vertices, "Target vertex count");
  gen->add_option("--outer", gen_opts.outer_length, "Outer cycle length 3, 6 or 7 (0: random)");
  gen->add_option("--min-degree", gen_opts.min_internal_degree, "Minimum internal degree");
  gen->add_option("--restarts", gen_opts.restarts, "Restarts before giving up");
  gen->add_option("--count", gen_count)->check(CLI::PositiveNumber);
  gen->add_option("--seed", cfg.seed);
  gen->add_flag("--strict", gen_opts.strict, "Also exclude separating good cycles and short splitting paths");
  common(gen);

  bool explain = false;
  auto* red = app.add_subcommand("reducible", "List reducible configurations as JSON lines");
  red->add_option("graph", graph_file)->required()->check(CLI::ExistingFile);
  red->add_flag("--explain", explain, "Attach the reduction plan");
  common(red);

  auto* ledger = app.add_subcommand("ledger", "Discharging ledger and audit for one graph");
  ledger->add_option("graph", graph_file)->required()->check(CLI::ExistingFile);
  common(ledger);

  int reduce_index = 0;
  auto* reduce = app.add_subcommand("reduce", "Colour a graph through one of its reductions");
  reduce->add_option("graph", graph_file)->required()->check(CLI::ExistingFile);
  reduce->add_option("cover", cover_file)->required()->check(CLI::ExistingFile);
  reduce->add_option("boundary", boundary_file)->required()->check(CLI::ExistingFile);
  reduce->add_option("--index", reduce_index, "Which non-trivial report to reduce");
  reduce->add_option("--m", cfg.m)->check(CLI::PositiveNumber);
  reduce->add_option("--budget-sec", cfg.budget_sec);
  common(reduce);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check_class(cfg, class_inputs);
    if (*solve) return cmd_solve(cfg, graph_file, cover_file, boundary_file);
    if (*tree) return cmd_tree_color(cfg, lists_file, tree_m);
    if (*audit) {
      if (audit_dir.empty()) {
        const char* env = std::getenv("DPCOLOR_CORPUS");
        require(env != nullptr, ErrorKind::PreconditionViolated, "no directory given and DPCOLOR_CORPUS unset");
        audit_dir = env;
      }
      return cmd_meta_audit(cfg, audit_dir);
    }
    if (*gen) {
      cfg.strict = gen_opts.strict;
      return cmd_gen(cfg, gen_opts, gen_count);
    }
    if (*red) return cmd_reducible(cfg, graph_file, explain);
    if (*ledger) return cmd_ledger(cfg, graph_file);
    if (*reduce) return cmd_reduce(cfg, graph_file, cover_file, boundary_file, reduce_index);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
