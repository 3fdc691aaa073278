#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "dpcolor/graph.hpp"

namespace dpcolor {

// A plane graph given by a rotation system (cyclic neighbour order at each
// vertex). Faces are derived by tracing darts: the successor of dart u->v is
// v->w where w follows u in the rotation at v. Exactly one face is the outer
// face, chosen from an explicit hint.
class PlaneGraph {
 public:
  PlaneGraph() = default;

  const Graph& graph() const { return graph_; }
  int vertex_count() const { return graph_.vertex_count(); }
  int edge_count() const { return graph_.edge_count(); }
  int degree(Vertex v) const { return graph_.degree(v); }
  bool has_edge(Vertex a, Vertex b) const { return graph_.has_edge(a, b); }

  const std::vector<Vertex>& rotation(Vertex v) const { return rotation_[v]; }
  const std::vector<std::vector<Vertex>>& rotations() const { return rotation_; }
  // Position of b in the rotation at a, or -1.
  int rotation_index(Vertex a, Vertex b) const;

  int face_count() const { return static_cast<int>(faces_.size()); }
  const std::vector<Vertex>& face(int f) const { return faces_[f]; }
  int face_degree(int f) const { return static_cast<int>(faces_[f].size()); }
  const std::vector<std::vector<Vertex>>& faces() const { return faces_; }
  // Face traced by the dart a->b.
  int face_of_dart(Vertex a, Vertex b) const;
  // Faces around v, one per dart leaving v, in rotation order (may repeat).
  std::vector<int> faces_around(Vertex v) const;

  int outer_face() const { return outer_face_; }
  const std::vector<Vertex>& outer_boundary() const { return faces_[outer_face_]; }
  bool is_external(Vertex v) const { return external_[v] != 0; }
  bool is_internal(Vertex v) const { return external_[v] == 0; }
  // True when the outer boundary walk visits no vertex twice and has length >= 3.
  bool outer_is_cycle() const;

  friend PlaneGraph build_embedding(std::vector<std::vector<Vertex>> rotation,
                                    std::span<const Vertex> outer_hint);

 private:
  Graph graph_;
  std::vector<std::vector<Vertex>> rotation_;
  std::vector<int> dart_offset_;
  std::vector<int> position_;  // n*n, rotation index or -1
  std::vector<int> dart_face_;
  std::vector<std::vector<Vertex>> faces_;
  int outer_face_ = 0;
  std::vector<char> external_;
};

// Validates the rotation system, traces faces, checks Euler's formula
// (V - E + F = 2 per component) and resolves the outer face from the hint.
// Throws InconsistentRotation, EulerViolation or AmbiguousOuterFace.
PlaneGraph build_embedding(std::vector<std::vector<Vertex>> rotation, std::span<const Vertex> outer_hint);

struct CycleWitness {
  std::vector<Vertex> vertices;  // starts at the smallest vertex; vertices[1] < vertices.back()
  int length = 0;
  std::vector<Vertex> interior;
  std::vector<Vertex> exterior;
  bool is_separating = false;
  bool is_good = false;  // length <= 7
};

struct ClassReport {
  bool connected = false;
  bool two_connected = false;
  std::optional<std::vector<Vertex>> four_cycle;
  std::optional<std::vector<Vertex>> five_cycle;
  bool outer_is_cycle = false;
  bool outer_is_good = false;
  std::vector<Edge> outer_chords;

  bool in_class() const { return connected && !four_cycle && !five_cycle; }
};

ClassReport check_class_p45(const PlaneGraph& g);

// Simple cycles of length 3..max_len (max_len <= 8), each listed once, with
// interior/exterior sides resolved from the embedding.
std::vector<CycleWitness> enumerate_short_cycles(const PlaneGraph& g, int max_len);

// Simple cycles of length 3..max_len of an abstract graph, canonical form only.
std::vector<std::vector<Vertex>> simple_cycles(const Graph& g, int max_len);

// Sides of a simple cycle: vertices strictly inside and strictly outside.
std::pair<std::vector<Vertex>, std::vector<Vertex>> cycle_sides(const PlaneGraph& g,
                                                                std::span<const Vertex> cycle);

// Paths with both ends on the outer cycle, at least one interior vertex, all
// interior vertices internal, and at most max_len edges. Each path is listed
// once with front() < back(). Throws BoundaryNotCycle.
std::vector<std::vector<Vertex>> splitting_paths(const PlaneGraph& g, int max_len);

struct VertexProfile {
  int degree = 0;
  bool is_internal = false;
  int triangle_count = 0;
  std::vector<Vertex> isolated_neighbors;
  bool is_poor = false;
};

VertexProfile vertex_profile(const PlaneGraph& g, Vertex v);

// Number of 3-cycles through v.
int triangle_count(const Graph& g, Vertex v);
// u is an isolated neighbour of v: uv is an edge lying in no triangle.
bool is_isolated_neighbor(const Graph& g, Vertex v, Vertex u);
// Internal, degree 3, and an isolated neighbour of v.
bool is_internal_isolated_3_neighbor(const PlaneGraph& g, Vertex v, Vertex u);
bool is_poor(const PlaneGraph& g, Vertex v);

struct IdentifyResult {
  PlaneGraph graph;
  std::vector<Vertex> old_to_new;  // -1 for removed vertices; x and y both map to vstar
  std::vector<Vertex> new_to_old;  // vstar maps back to x
  Vertex vstar = -1;
  Vertex x = -1;
  Vertex y = -1;
};

// Deletes `removed` (which must contain z) and merges x and y into one vertex
// v*. x and y are neighbours of z separated on both sides in the rotation at
// z. The result is checked to contain no 4- or 5-cycle and to keep the outer
// boundary subgraph unchanged; failure there raises LemmaViolated.
IdentifyResult identify_vertices(const PlaneGraph& g, Vertex x, Vertex y, Vertex z,
                                 std::span<const Vertex> removed);

}  // namespace dpcolor
