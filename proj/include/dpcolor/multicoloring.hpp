#pragma once

#include <optional>
#include <vector>

#include "dpcolor/graph.hpp"

namespace dpcolor {

// Per-vertex list sizes f and fold sizes g; m is the scale the proof works in.
struct FoldSpec {
  int m = 1;
  std::vector<int> f;
  std::vector<int> g;

  // f = 7m and g = 2m everywhere.
  static FoldSpec uniform(int n, int m) { return constant(n, m, 7 * m, 2 * m); }
  static FoldSpec constant(int n, int m, int f_value, int g_value) {
    return FoldSpec{m, std::vector<int>(static_cast<std::size_t>(n), f_value),
                    std::vector<int>(static_cast<std::size_t>(n), g_value)};
  }
  bool consistent() const {
    if (m < 1 || f.size() != g.size()) return false;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (g[i] < 0 || g[i] > f[i]) return false;
    return true;
  }
};

// Assignment of a set of colour indices (into the vertex's own list) to some
// of the vertices. Index sets are kept sorted.
class MultiColoring {
 public:
  MultiColoring() = default;
  explicit MultiColoring(int n) : assignment_(static_cast<std::size_t>(n)) {}

  int vertex_count() const { return static_cast<int>(assignment_.size()); }
  bool is_colored(Vertex v) const { return assignment_[v].has_value(); }
  const std::vector<int>& colors(Vertex v) const { return *assignment_[v]; }
  void assign(Vertex v, std::vector<int> indices);
  void clear(Vertex v) { assignment_[v].reset(); }
  std::vector<Vertex> colored_vertices() const;
  bool operator==(const MultiColoring&) const = default;

 private:
  std::vector<std::optional<std::vector<int>>> assignment_;
};

}  // namespace dpcolor
