#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace dpcolor {

using Vertex = int;

// Undirected edge stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  Vertex other(Vertex x) const { return x == u ? v : u; }
  auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph with sorted adjacency lists and an O(1) adjacency test.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::span<const Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(Vertex a, Vertex b) const {
    return a != b && matrix_[static_cast<std::size_t>(a) * n_ + b] != 0;
  }
  bool contains(Vertex v) const { return v >= 0 && v < n_; }

  bool is_connected() const;
  int component_count() const;
  bool is_acyclic() const;
  // Articulation points in increasing order.
  std::vector<Vertex> cut_vertices() const;
  bool is_two_connected() const;

  // Induced subgraph on `keep` (sorted, unique); new ids follow the order of `keep`.
  Graph induced(std::span<const Vertex> keep) const;

 private:
  void add_edge_unchecked(Vertex a, Vertex b);

  int n_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> matrix_;
};

}  // namespace dpcolor
