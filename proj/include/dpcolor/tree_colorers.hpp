#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpcolor/cover.hpp"
#include "dpcolor/graph.hpp"
#include "dpcolor/multicoloring.hpp"

namespace dpcolor {

// The lemma trees. Local vertex ids are role indices:
//   Claw          u v1 v2 v3             edges u-vi
//   DoubleClaw    u v u1 u2 v1 v2        edges uv, u-ui, v-vi   (f 5m/3m, g 2m)
//   DoubleClawG   u v u1 u2 v1 v2        same tree              (f 4m/2m, g 2m centres, m leaves)
//   Star5         v v1 v2 v3 v4 v5       edges v-vi
//   Broom         u w v v1 v2 v3         edges uw, wv, v-vi
enum class TreeKind { Claw, DoubleClaw, DoubleClawG, Star5, Broom };

std::string_view to_string(TreeKind kind);
TreeKind tree_kind_from_string(std::string_view name);  // throws Parse
const std::vector<std::string>& role_names(TreeKind kind);
Graph shape_graph(TreeKind kind);
// List sizes and folds the lemma prescribes at scale m, per role.
std::vector<int> shape_sizes(TreeKind kind, int m);
std::vector<int> shape_folds(TreeKind kind, int m);

using ColorList = std::vector<int>;  // sorted colour names

struct ColorerTrace {
  std::string case_taken;
  bool fallback_used = false;
  std::vector<std::pair<std::string, int>> quantities;  // named intermediate set sizes
};

struct ListColoring {
  std::vector<ColorList> phi;  // per role
  ColorerTrace trace;
};

// Each colorer takes one list per role, already nested as its lemma assumes,
// and throws PreconditionViolated otherwise. Whenever the construction picks
// "an m-subset" it takes the lexicographically smallest one.
ListColoring color_claw(const std::vector<ColorList>& lists, int m);
ListColoring color_double_claw_g(const std::vector<ColorList>& lists, int m);
ListColoring color_double_claw_uniform(const std::vector<ColorList>& lists, int m);
// Never needs its exhaustive fallback in practice; trace.fallback_used says if it did.
ListColoring color_star5(const std::vector<ColorList>& lists, int m);
ListColoring color_broom(const std::vector<ColorList>& lists, int m);

ListColoring color_lists(TreeKind kind, const std::vector<ColorList>& lists, int m);

// Empty iff phi gives each role its fold from its own list with adjacent roles disjoint.
std::vector<std::string> check_list_coloring(TreeKind kind, const std::vector<ColorList>& lists,
                                             const std::vector<ColorList>& phi, int m);

struct TreeColoring {
  MultiColoring coloring;
  ColorerTrace trace;
  std::vector<ColorList> lists;  // the nested lists the colorer saw
};

// Cover over shape_graph(kind) -> nested lists -> colorer -> back-map ->
// verified (H,g)-colouring. Sizes and folds must match the lemma at spec.m.
TreeColoring dispatch_tree_colorer(TreeKind kind, const Cover& c, const FoldSpec& spec);

}  // namespace dpcolor
