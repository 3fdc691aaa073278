// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dpcolor/coloring.hpp"
#include "dpcolor/cover.hpp"
#include "dpcolor/discharging.hpp"
#include "dpcolor/error.hpp"
#include "dpcolor/generator.hpp"
#include "dpcolor/io.hpp"
#include "dpcolor/plane_graph.hpp"
#include "dpcolor/reducible.hpp"
#include "dpcolor/tree_colorers.hpp"
#include "support.hpp"

using namespace dpcolor;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Line {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const Line& line) {
  std::printf("criterion %d %s: %s\n", id, line.pass ? "PASS" : "FAIL", line.detail.c_str());
  std::fflush(stdout);
  if (!line.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<fs::path> top_level_corpus() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(DPCOLOR_CORPUS_DIR))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// 1. Every colorer on random nested lists.
Line constructive_suite() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  long runs = 0, bad = 0, star5_fallbacks = 0;
  std::string first_error;
  const TreeKind kinds[] = {TreeKind::Claw, TreeKind::DoubleClaw, TreeKind::DoubleClawG, TreeKind::Star5,
                            TreeKind::Broom};
  for (TreeKind kind : kinds) {
    std::vector<int> ms{1, 2, 3};
    if (kind == TreeKind::Star5) ms.push_back(5);
    for (int m : ms)
      for (int i = 0; i < 1000; ++i) {
        auto lists = testing::random_nested_lists(kind, m, rng);
        ++runs;
        try {
          // Going through a cover checks the result with verify_coloring as well.
          const Graph t = shape_graph(kind);
          FoldSpec spec{m, shape_sizes(kind, m), shape_folds(kind, m)};
          const Cover c = cover_from_lists(t, lists);
          auto direct = color_lists(kind, lists, m);
          if (!check_list_coloring(kind, lists, direct.phi, m).empty()) ++bad;
          if (direct.trace.fallback_used) ++star5_fallbacks;
          auto via_cover = dispatch_tree_colorer(kind, c, spec);
          if (!verify_coloring(t, c, spec, via_cover.coloring).empty()) ++bad;
        } catch (const Error& e) {
          ++bad;
          if (first_error.empty()) first_error = std::string(to_string(kind)) + ": " + e.what();
        }
      }
  }
  const double secs = seconds_since(t0);
  Line l;
  l.pass = bad == 0 && secs < 120.0;
  l.detail = fmt("%ld colorings verified, %ld failures, star5 fallback used %ld times, %.1fs", runs - bad, bad,
                 star5_fallbacks, secs);
  if (!first_error.empty()) l.detail += "; first error " + first_error;
  return l;
}

// 2. All claw list assignments at m = 1 with L(u) = {0..4} and leaf lists
// drawn from 8 colours, one per orbit under renaming the colours.
Line claw_oracle() {
  const auto t0 = Clock::now();
  std::vector<int> leaf_masks;
  for (int mask = 0; mask < 256; ++mask)
    if (__builtin_popcount(mask) == 3) leaf_masks.push_back(mask);

  // Renamings that keep L(u) = {0..4}: permute 0..4 among themselves and 5..7 among themselves.
  std::vector<std::array<int, 8>> renamings;
  std::array<int, 5> in{0, 1, 2, 3, 4};
  do {
    std::array<int, 3> out{5, 6, 7};
    do {
      std::array<int, 8> p{};
      for (int i = 0; i < 5; ++i) p[i] = in[i];
      for (int i = 0; i < 3; ++i) p[5 + i] = out[i];
      renamings.push_back(p);
    } while (std::next_permutation(out.begin(), out.end()));
  } while (std::next_permutation(in.begin(), in.end()));

  auto apply = [](const std::array<int, 8>& p, int mask) {
    int r = 0;
    for (int c = 0; c < 8; ++c)
      if (mask >> c & 1) r |= 1 << p[c];
    return r;
  };

  std::set<std::array<int, 3>> seen;
  long instances = 0, constructive_ok = 0, oracle_sat = 0;
  std::string first_error;
  for (int a : leaf_masks)
    for (int b : leaf_masks)
      for (int c : leaf_masks) {
        std::array<int, 3> key{a, b, c};
        for (const auto& p : renamings) key = std::min(key, std::array<int, 3>{apply(p, a), apply(p, b), apply(p, c)});
        if (key != std::array<int, 3>{a, b, c}) continue;  // not the orbit representative
        if (!seen.insert(key).second) continue;
        ++instances;
        std::vector<ColorList> lists{{0, 1, 2, 3, 4}};
        for (int mask : key) {
          ColorList l;
          for (int col = 0; col < 8; ++col)
            if (mask >> col & 1) l.push_back(col);
          lists.push_back(l);
        }
        if (testing::naive_list_colorable(TreeKind::Claw, lists, 1)) ++oracle_sat;
        try {
          const Graph t = shape_graph(TreeKind::Claw);
          FoldSpec spec{1, shape_sizes(TreeKind::Claw, 1), shape_folds(TreeKind::Claw, 1)};
          const Cover cov = cover_from_lists(t, lists);
          auto res = dispatch_tree_colorer(TreeKind::Claw, cov, spec);
          if (verify_coloring(t, cov, spec, res.coloring).empty()) ++constructive_ok;
        } catch (const Error& e) {
          if (first_error.empty()) first_error = e.what();
        }
      }
  const double secs = seconds_since(t0);
  Line l;
  l.pass = instances > 0 && constructive_ok == instances && oracle_sat == instances && secs < 300.0;
  l.detail = fmt("%ld canonical instances, constructive %ld, oracle SAT %ld, %.1fs", instances, constructive_ok,
                 oracle_sat, secs);
  if (!first_error.empty()) l.detail += "; first error " + first_error;
  return l;
}

// 3. Charge sums and transfer-by-transfer conservation on the corpus.
Line charge_identities() {
  long graphs = 0, in_range = 0, bad = 0;
  for (const auto& f : top_level_corpus()) {
    auto g = graph_from_json(read_text_file(f));
    ++graphs;
    if (g.vertex_count() >= 7 && g.vertex_count() <= 40) ++in_range;
    try {
      auto init = initial_charges(g);
      auto fin = apply_rules(g, init);
      auto audit = audit_final(g, fin);
      // Replay the log against the initial ledger.
      auto replay = init;
      for (const auto& t : fin.transfers) {
        const long before = replay.total();
        replay.at(t.from) -= t.amount;
        replay.at(t.to) += t.amount;
        if (replay.total() != before) ++bad;
      }
      if (init.total() != 0 || fin.total() != 0 || !audit.conservation ||
          replay.vertex_charge != fin.vertex_charge || replay.face_charge != fin.face_charge)
        ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  Line l;
  l.pass = bad == 0 && in_range >= 200;
  l.detail = fmt("%ld corpus graphs (%ld with 7-40 vertices), %ld charge or conservation failures", graphs, in_range,
                 bad);
  return l;
}

// 4. The exact cases of the final-charge argument, checked on every matching
// element of the corpus and the hand-built graphs.
Line local_cases() {
  struct Case {
    const char* name;
    long witnesses = 0;
    long mismatches = 0;
  };
  std::map<std::string, Case> cases;
  for (const char* n : {"internal non-triangular 3-vertex", "poor triangular 3-vertex", "non-poor triangular 3-vertex",
                        "bounded 3-face", "bounded 6+-face", "external 2-vertex"})
    cases[n] = Case{n};
  long outside_setting = 0;

  std::vector<fs::path> files = top_level_corpus();
  for (const auto& e : fs::directory_iterator(fs::path(DPCOLOR_CORPUS_DIR) / "reductions")) files.push_back(e.path());
  files.push_back("");  // bare C7, built below

  for (const auto& f : files) {
    const PlaneGraph g = f.empty() ? testing::cycle_graph(7) : graph_from_json(read_text_file(f));
    const auto init = initial_charges(g);
    const auto fin = apply_rules(g, init);
    auto received = [&](Element e) {
      std::multiset<std::pair<int, int>> out;  // (signed amount, rule)
      for (const auto& t : fin.transfers) {
        if (t.to == e) out.insert({t.amount, static_cast<int>(t.rule)});
        if (t.from == e) out.insert({-t.amount, static_cast<int>(t.rule)});
      }
      return out;
    };
    auto check = [&](const char* name, Element e, int expected_final,
                     const std::multiset<std::pair<int, int>>& expected_flow) {
      auto& c = cases[name];
      ++c.witnesses;
      if (fin.at(e) != expected_final || received(e) != expected_flow) ++c.mismatches;
    };
    const int R1 = static_cast<int>(Rule::R1), R21 = static_cast<int>(Rule::R2_1),
              R22 = static_cast<int>(Rule::R2_2), R4 = static_cast<int>(Rule::R4);
    std::vector<int> facial_triangles(g.vertex_count(), 0);
    for (int f = 0; f < g.face_count(); ++f)
      if (f != g.outer_face() && g.face_degree(f) == 3)
        for (Vertex v : g.face(f)) ++facial_triangles[v];
    // The vertex cases assume what a minimal counterexample guarantees: every
    // triangle at v bounds a face, and no neighbour takes charge from v (no
    // triangular internal 3-neighbour, no poor 4-neighbour).
    auto quiet = [&](Vertex v) {
      if (facial_triangles[v] != triangle_count(g.graph(), v)) return false;
      for (Vertex u : g.graph().neighbors(v)) {
        if (g.is_internal(u) && g.degree(u) == 3 && triangle_count(g.graph(), u) > 0) return false;
        if (g.degree(u) == 4 && is_poor(g, u)) return false;
      }
      return true;
    };
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const auto p = vertex_profile(g, v);
      const Element e = Element::vertex(v);
      if (p.is_internal && p.degree == 3 && !quiet(v)) {
        ++outside_setting;
        continue;
      }
      if (p.is_internal && p.degree == 3) {
        if (p.triangle_count == 0)
          check("internal non-triangular 3-vertex", e, 0, {});
        else if (p.is_poor)  // 0 - 1 + 2 * 1/2
          check("poor triangular 3-vertex", e, 0, {{-2, R1}, {1, R21}, {1, R21}});
        else  // 0 - 1 + 1
          check("non-poor triangular 3-vertex", e, 0, {{-2, R1}, {2, R22}});
      }
      if (!p.is_internal && p.degree == 2) check("external 2-vertex", e, 0, {{4, R4}});  // -2 + 2
    }
    for (int f = 0; f < g.face_count(); ++f) {
      if (f == g.outer_face()) continue;
      const int d = g.face_degree(f);
      if (d == 3) check("bounded 3-face", Element::face(f), 0, {{2, R1}, {2, R1}, {2, R1}});  // 3 - 6 + 3
      if (d >= 6) check("bounded 6+-face", Element::face(f), 2 * (d - 6), {});
    }
  }
  Line l;
  std::string parts;
  for (const auto& [name, c] : cases) {
    if (c.witnesses == 0 || c.mismatches != 0) l.pass = false;
    if (!parts.empty()) parts += ", ";
    parts += fmt("%s %ld/%ld", name.c_str(), c.witnesses - c.mismatches, c.witnesses);
  }
  l.detail = parts + fmt("; %ld internal 3-vertices on a separating triangle or next to a triangular 3-vertex or poor 4-vertex left out", outside_setting);
  return l;
}

// 5. meta_audit over the legal corpus instances.
Line meta_audit_corpus() {
  const auto t0 = Clock::now();
  long legal = 0, found = 0, counterexamples = 0, charge_failed = 0, skipped = 0;
  std::map<std::string, long> by_kind;
  for (const auto& f : top_level_corpus()) {
    auto g = graph_from_json(read_text_file(f));
    const auto cls = check_class_p45(g);
    bool has_interior = false;
    for (Vertex v = 0; v < g.vertex_count(); ++v) has_interior = has_interior || g.is_internal(v);
    if (!cls.in_class() || !cls.two_connected || !cls.outer_is_good || !cls.outer_chords.empty() || !has_interior) {
      ++skipped;
      continue;
    }
    ++legal;
    const auto v = meta_audit(g);
    if (v.kind == VerdictKind::ReducibleFound) ++found;
    if (v.kind == VerdictKind::PaperCounterexample) ++counterexamples;
    if (v.kind == VerdictKind::ChargeClaimFailed) ++charge_failed;
    std::set<ConfigKind> kinds;
    for (const auto& r : v.reports) kinds.insert(r.kind);
    for (ConfigKind k : kinds) ++by_kind[std::string(to_string(k))];
  }
  const double secs = seconds_since(t0);
  Line l;
  l.pass = legal > 0 && found == legal && counterexamples == 0 && secs < 300.0;
  l.detail = fmt("%ld legal graphs, ReducibleFound %ld, PaperCounterexample %ld, ChargeClaimFailed %ld, %ld skipped as "
                 "not legal, %.1fs; graphs per kind:",
                 legal, found, counterexamples, charge_failed, skipped, secs);
  for (const auto& [k, n] : by_kind) l.detail += fmt(" %s=%ld", k.c_str(), n);
  return l;
}

// 6. One hand-built instance per reduction recipe, run end to end at m = 1.
Line end_to_end() {
  struct Instance {
    const char* file;
    ConfigKind kind;
  };
  const Instance instances[] = {
      {"L10.json", ConfigKind::L10_Claw4},
      {"L11.json", ConfigKind::L11_Adjacent4s},
      {"L12_u3_poor3.json", ConfigKind::L12_TrianglePoorSmallU},
      {"L12_u3_poor4.json", ConfigKind::L12_TrianglePoorSmallU},
      {"L12_u4_poor3.json", ConfigKind::L12_TrianglePoorSmallU},
      {"L12_u4_poor4.json", ConfigKind::L12_TrianglePoorSmallU},
      {"L13.json", ConfigKind::L13_FiveStar},
      {"L14.json", ConfigKind::L14_Broom},
      {"L15.json", ConfigKind::L15_DoubleClaw},
  };
  std::mt19937_64 rng(6);
  long runs = 0, verified = 0, identified = 0;
  std::string sizes, first_error, over14;
  for (const auto& inst : instances) {
    const auto g = graph_from_json(read_text_file(fs::path(DPCOLOR_CORPUS_DIR) / "reductions" / inst.file));
    sizes += fmt("%s%s=%d", sizes.empty() ? "" : " ", inst.file, g.vertex_count());
    if (g.vertex_count() > 14) over14 += fmt("%s%s", over14.empty() ? "" : ", ", inst.file);
    std::optional<ReductionPlan> plan;
    for (const auto& r : find_reducible(g))
      if (r.kind == inst.kind) {
        plan = explain_reduction(r, g);
        break;
      }
    if (!plan) {
      first_error = std::string(inst.file) + ": no report";
      continue;
    }
    for (int round = 0; round < 20; ++round) {
      ++runs;
      const Cover c = testing::random_cover(g.graph(), 7, rng);
      const auto boundary = testing::boundary_coloring(g, c, 1);
      try {
        if (!boundary) fail(ErrorKind::SubproblemUnsat, "G[D] has no colouring");
        const auto out = execute_reduction(*plan, g, c, *boundary, 1);
        bool ok = verify_coloring(g.graph(), c, FoldSpec::uniform(g.vertex_count(), 1), out.coloring).empty();
        for (Vertex v : g.outer_boundary()) ok = ok && out.coloring.colors(v) == boundary->colors(v);
        for (std::size_t r = 0; r < plan->residual_multiples.size(); ++r)
          ok = ok && out.residual_sizes[r] >= plan->residual_multiples[r];
        if (ok) ++verified;
        if (plan->identification) ++identified;
      } catch (const Error& e) {
        if (first_error.empty()) first_error = std::string(inst.file) + ": " + e.what();
      }
    }
  }
  Line l;
  l.pass = runs > 0 && verified == runs;
  l.detail = fmt("%ld/%ld reductions verified (%ld with identification); vertices: %s", verified, runs, identified,
                 sizes.c_str());
  if (!over14.empty())
    l.detail += "; relaxed size bound, no instance of at most 14 vertices exists for " + over14;
  if (!first_error.empty()) l.detail += "; first error " + first_error;
  return l;
}

// 7. Identifications meeting the lemma's hypotheses on strict generated graphs.
Line identification_gadget() {
  long instances = 0, good = 0, graphs = 0, excluded = 0;
  std::string first_error;
  for (const auto& f : top_level_corpus()) {
    const std::string name = f.filename().string();
    if (name.rfind("strict_", 0) != 0 && name.rfind("deg3strict_", 0) != 0) continue;
    const auto g = graph_from_json(read_text_file(f));
    // The lemma lives inside a minimal counterexample: no separating good
    // cycle and no splitting path other than a 2-path onto a boundary edge.
    bool setting = true;
    for (const auto& r : find_reducible(g))
      if (r.kind == ConfigKind::SeparatingGoodCycle || r.kind == ConfigKind::SplitPath3 ||
          r.kind == ConfigKind::SplitPath2NonTriangle || r.kind == ConfigKind::BoundaryChord ||
          r.kind == ConfigKind::CutVertex)
        setting = false;
    if (!setting) {
      ++excluded;
      continue;
    }
    bool used = false;
    for (Vertex z = 0; z < g.vertex_count(); ++z) {
      if (!g.is_internal(z) || g.degree(z) < 4) continue;
      const auto& rot = g.rotation(z);
      const int d = static_cast<int>(rot.size());
      for (int i = 0; i < d; ++i)
        for (int j = i + 2; j < d; ++j) {
          if (i == 0 && j == d - 1) continue;  // consecutive around z
          const Vertex x = rot[i], y = rot[j];
          if (!g.is_internal(x) && !g.is_internal(y)) continue;
          // With u or v left in G - Z a triangle at z can close a 5-cycle, so
          // every other neighbour of z goes into Z and must be internal.
          std::vector<Vertex> removed{z};
          bool internal = true;
          for (Vertex w : rot)
            if (w != x && w != y) {
              removed.push_back(w);
              internal = internal && g.is_internal(w);
            }
          if (!internal) continue;
          ++instances;
          used = true;
          try {
            auto res = identify_vertices(g, x, y, z, removed);
            const auto cls = check_class_p45(res.graph);
            bool ok = !cls.four_cycle && !cls.five_cycle;
            const auto& d_old = g.outer_boundary();
            for (std::size_t a = 0; a < d_old.size(); ++a)
              for (std::size_t b = 0; b < d_old.size(); ++b)
                ok = ok && g.has_edge(d_old[a], d_old[b]) ==
                               res.graph.has_edge(res.old_to_new[d_old[a]], res.old_to_new[d_old[b]]);
            if (ok) ++good;
          } catch (const Error& e) {
            if (first_error.empty()) first_error = name + ": " + e.what();
          }
        }
    }
    graphs += used ? 1 : 0;
  }
  Line l;
  l.pass = instances >= 100 && good == instances;
  l.detail = fmt("%ld/%ld identifications on %ld strict generated graphs keep the class and G[D]; %ld graphs with a "
                 "separating good cycle or splitting path excluded",
                 good, instances, graphs, excluded);
  if (!first_error.empty()) l.detail += "; first error " + first_error;
  return l;
}

// 8. Small generated graphs under random 7-covers.
Line theorem_probe() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8);
  long graphs = 0, sat = 0, solves = 0, stalled = 0;
  std::string first_error;
  for (std::uint64_t seed = 0; graphs < 50 && seed < 500; ++seed) {
    GeneratorOptions opts;
    opts.target_vertices = 7 + static_cast<int>(seed % 6);
    opts.min_internal_degree = seed % 2 == 0 ? 3 : 0;
    PlaneGraph g;
    try {
      g = generate_graph(opts, seed);
    } catch (const Error& e) {
      ++stalled;
      continue;
    }
    if (g.vertex_count() > 12 || !check_class_p45(g).in_class()) {
      first_error = "generator produced an unusable graph";
      continue;
    }
    ++graphs;
    for (int i = 0; i < 20; ++i) {
      ++solves;
      const Cover c = testing::random_cover(g.graph(), 7, rng);
      const auto spec = FoldSpec::uniform(g.vertex_count(), 1);
      const auto res = exhaustive_solve(g.graph(), c, spec, MultiColoring(g.vertex_count()));
      if (res.status == SolveStatus::Sat && verify_coloring(g.graph(), c, spec, res.coloring).empty()) ++sat;
    }
  }
  const double secs = seconds_since(t0);
  Line l;
  l.pass = graphs == 50 && sat == solves && secs < 600.0;
  l.detail = fmt("%ld graphs with 7-12 vertices, %ld/%ld covers coloured, %ld stalled seeds skipped, %.1fs", graphs, sat,
                 solves, stalled, secs);
  if (!first_error.empty()) l.detail += "; " + first_error;
  return l;
}

}  // namespace

int main() {
  const std::function<Line()> criteria[] = {constructive_suite, claw_oracle,    charge_identities,     local_cases,
                                            meta_audit_corpus,  end_to_end,     identification_gadget, theorem_probe};
  for (int i = 0; i < 8; ++i) {
    try {
      report(i + 1, criteria[i]());
    } catch (const std::exception& e) {
      report(i + 1, Line{false, std::string("aborted: ") + e.what()});
    }
  }
  return failures == 0 ? 0 : 1;
}
