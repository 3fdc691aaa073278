#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpcolor/coloring.hpp"
#include "dpcolor/cover.hpp"
#include "dpcolor/plane_graph.hpp"
#include "dpcolor/tree_colorers.hpp"

namespace dpcolor {

enum class ConfigKind {
  InternalDeg2,
  CutVertex,
  SeparatingGoodCycle,
  BoundaryChord,
  SplitPath2NonTriangle,
  SplitPath3,
  L10_Claw4,
  L11_Adjacent4s,
  L12_TrianglePoorSmallU,
  L13_FiveStar,
  L14_Broom,
  L15_DoubleClaw,
};

std::string_view to_string(ConfigKind kind);
ConfigKind config_kind_from_string(std::string_view name);  // throws Parse
bool is_trivial_property(ConfigKind kind);

// Witness layouts (vertex order is significant):
//   InternalDeg2, CutVertex    [v]
//   SeparatingGoodCycle        the cycle
//   BoundaryChord              [a, b]
//   SplitPath2NonTriangle      [x, y, z]
//   SplitPath3                 [w, x, y, z]
//   L10_Claw4                  [v, v1, v2, v3]
//   L11_Adjacent4s             [p, q, s, t, a, c]: p, q adjacent internal 4-vertices, s, t the
//                              offending internal 3-neighbours of q, a and c the neighbours of p
//                              right after and right before q's side
//   L12_TrianglePoorSmallU     [u, v, w, v'(, v'')]: triangle uvw, v poor, u internal of degree <= 4
//   L13_FiveStar               [v, v1..v5]
//   L14_Broom                  [u', u, v, w, v1, v2, v3]
//   L15_DoubleClaw             [u, v, w, u1, u2, v1, v2, v3], v1..v3 in rotation order from w
struct ConfigReport {
  ConfigKind kind;
  std::vector<Vertex> witness;
  std::vector<Edge> edges;
  bool operator==(const ConfigReport&) const = default;
};

// Every occurrence of every configuration. Requires a graph without 4- and
// 5-cycles whose outer boundary is a cycle of length at most 7.
std::vector<ConfigReport> find_reducible(const PlaneGraph& g);

// Re-evaluates the defining predicate of a report against g.
bool check_report(const PlaneGraph& g, const ConfigReport& report);

struct Identification {
  Vertex x = -1;
  Vertex y = -1;
  Vertex z = -1;
};

struct ReductionPlan {
  ConfigKind kind;
  std::vector<Vertex> deleted;                   // Z
  std::optional<Identification> identification;
  std::vector<Edge> straighten;                  // xz and yz when identifying
  TreeKind colorer;
  std::vector<Vertex> roles;                     // host vertex per colorer role, -1 for a padding leaf
  std::vector<int> residual_multiples;           // lemma list size per role, in units of m
};

// The recipe the corresponding lemma uses. Throws UnsupportedKind for the
// trivial properties and PreconditionViolated when the embedding around the
// witness does not have the arrangement the proof assumes.
ReductionPlan explain_reduction(const ConfigReport& report, const PlaneGraph& g);

struct ReductionOptions {
  double budget_sec = 60.0;
  int max_solver_vertices = 40;
};

struct ReductionOutcome {
  MultiColoring coloring;
  std::vector<int> residual_sizes;  // |L'| per colorer role before trimming (padding: lemma size)
  ColorerTrace trace;
  int subproblem_vertices = 0;
};

// Straightens xz, yz; colours G - Z (or the identified graph) extending the
// boundary colouring with the exact solver; checks the residual sizes against
// the lemma; finishes Z with the tree colorer. The result is verified on the
// whole graph. Throws SolverTooLarge, SubproblemUnsat or LemmaViolated.
ReductionOutcome execute_reduction(const ReductionPlan& plan, const PlaneGraph& g, const Cover& c,
                                   const MultiColoring& boundary_phi, int m, const ReductionOptions& options = {});

}  // namespace dpcolor
