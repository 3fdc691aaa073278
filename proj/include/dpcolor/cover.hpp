#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpcolor/graph.hpp"
#include "dpcolor/multicoloring.hpp"
#include "dpcolor/plane_graph.hpp"

namespace dpcolor {

// The colour (index, owner). Colours of distinct vertices are distinct.
struct Color {
  Vertex owner = 0;
  int index = 0;
  auto operator<=>(const Color&) const = default;
};

using IndexPair = std::pair<int, int>;

// A cover (L, M): |L(v)| = sizes[v] and, per edge, an explicit set of colour
// pairs. Pairs are stored against the normalised edge (u < v) as
// (index at u, index at v). Nothing here enforces the matching property;
// validate_cover reports violations.
class Cover {
 public:
  Cover() = default;
  explicit Cover(std::vector<int> sizes) : sizes_(std::move(sizes)) {}

  int vertex_count() const { return static_cast<int>(sizes_.size()); }
  int size(Vertex v) const { return sizes_[v]; }
  const std::vector<int>& sizes() const { return sizes_; }

  // Pairs oriented from a's side: (index at a, index at b).
  std::vector<IndexPair> matching(Vertex a, Vertex b) const;
  void set_matching(Vertex a, Vertex b, std::vector<IndexPair> pairs_from_a);
  void add_pair(Vertex a, int i, Vertex b, int j);
  const std::map<Edge, std::vector<IndexPair>>& matchings() const { return matchings_; }

  bool operator==(const Cover&) const = default;

 private:
  std::vector<int> sizes_;
  std::map<Edge, std::vector<IndexPair>> matchings_;
};

struct CoverViolation {
  enum class Kind { SizeMismatch, UnknownEdge, ColorOutOfRange, NotAMatching };
  Kind kind;
  Edge edge;  // {v, v} for per-vertex problems
  std::string detail;
};

// Empty iff every M_e is a matching between L(u) and L(v) on an edge of g and,
// when expected_sizes is non-empty, |L(v)| equals it everywhere.
std::vector<CoverViolation> validate_cover(const Graph& g, const Cover& c, std::span<const int> expected_sizes = {});

// Every edge straight: pairs (i,u)(i,v) for i below min(f(u), f(v)).
Cover straight_cover(const Graph& g, int size);
Cover straight_cover(const Graph& g, std::span<const int> sizes);

// All pairs on uv join equal indices.
bool is_straight(const Cover& c, Vertex a, Vertex b);

// The cover of a list assignment: index i of v is lists[v][i] (lists sorted),
// and M_uv joins equal colour names.
Cover cover_from_lists(const Graph& g, std::span<const std::vector<int>> lists);

struct StraightenResult {
  Cover cover;
  // permutation[v][old index] = new index; identity off the tree.
  std::vector<std::vector<int>> permutation;
};

// Permutes colours so that every pair on a tree edge joins equal indices.
// Throws NotATree when `tree` contains a cycle.
StraightenResult straighten_tree(const Cover& c, std::span<const Edge> tree);

// Re-indexes a colouring through per-vertex permutations (or their inverses).
MultiColoring permute_coloring(const MultiColoring& phi, const std::vector<std::vector<int>>& permutation,
                               bool inverse = false);

// N_M(x): colours matched to x across all edges at its owner.
std::vector<Color> color_neighbors(const Cover& c, Color x);

struct ResidualCover {
  std::vector<Vertex> vertices;          // Z, sorted
  std::vector<std::vector<int>> lists;   // surviving indices L'(v), aligned with vertices
  std::vector<int> lower_bounds;         // f(v) - sum of |phi(u)| over coloured neighbours
  std::map<Edge, std::vector<IndexPair>> matchings;  // M restricted to surviving colours inside Z

  const std::vector<int>& list_of(Vertex v) const;
};

// L'(v) = L(v) minus the M-neighbours of colours on N_{G-Z}(v). phi must
// colour every vertex outside Z without conflicts (InvalidPartialColoring).
ResidualCover residual(const Graph& g, const Cover& c, const MultiColoring& phi, std::span<const Vertex> z);

// Cover of the identified graph: M_{v*u} collects the pairs of M_xu and M_yu.
// Throws MatchingCollision when some u is adjacent to both x and y.
Cover inherited_cover(const Graph& g, const Cover& c, const IdentifyResult& id);

struct TreeLists {
  Cover saturated;                        // input cover plus saturating pairs
  std::vector<std::vector<int>> lists;    // L''(v): sorted component ids
  std::vector<std::map<int, int>> back;   // back[v][component id] = index in L(v)
};

// Lists from the components of the colour graph of a tree cover, after each
// M_e is saturated from its smaller side. Throws NotATree.
TreeLists tree_cover_to_lists(const Graph& tree, const Cover& c);

}  // namespace dpcolor
