#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dpcolor/cover.hpp"
#include "dpcolor/graph.hpp"
#include "dpcolor/multicoloring.hpp"

namespace dpcolor {

struct ColoringViolation {
  enum class Kind { Uncolored, WrongSize, OutOfRange, Repeated, Conflict };
  Kind kind;
  Vertex u = -1;
  Vertex v = -1;
  std::string detail;
};

// Empty iff phi is an (H,g)-coloring of the subgraph induced on `domain`.
std::vector<ColoringViolation> verify_coloring(const Graph& g, const Cover& c, const FoldSpec& spec,
                                               const MultiColoring& phi, std::span<const Vertex> domain);
// Whole-graph form.
std::vector<ColoringViolation> verify_coloring(const Graph& g, const Cover& c, const FoldSpec& spec,
                                               const MultiColoring& phi);

enum class SolveStatus { Sat, Unsat, Timeout };

struct SolveOptions {
  double budget_sec = 60.0;
  std::int64_t node_limit = -1;  // negative: unlimited
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  MultiColoring coloring;
  std::int64_t nodes = 0;
};

// Backtracking search for an extension of `fixed` to every vertex. Picks the
// uncoloured vertex with least slack, tries g(v)-subsets in lexicographic
// order and prunes neighbours whose remaining list drops below their fold.
// Lists are limited to 64 colours (SolverTooLarge). Throws
// InvalidPartialColoring if `fixed` is not valid on its own domain.
SolveResult exhaustive_solve(const Graph& g, const Cover& c, const FoldSpec& spec, const MultiColoring& fixed,
                             const SolveOptions& options = {});

// Colours the vertices of `order` one at a time with the lexicographically
// smallest free g(v)-subset. Throws InsufficientSlack naming the first vertex
// where f(v) - sum of g over coloured neighbours falls below g(v).
MultiColoring extend_low_degree(const Graph& g, const Cover& c, const FoldSpec& spec, const MultiColoring& phi,
                                std::span<const Vertex> order);

// Smallest-last order: every vertex has at most `degeneracy` neighbours
// earlier in the returned order.
std::vector<Vertex> degeneracy_order(const Graph& g, int* degeneracy = nullptr);

}  // namespace dpcolor
