#include "dpcolor/graph.hpp"

#include <algorithm>
#include <numeric>

#include "dpcolor/error.hpp"

namespace dpcolor {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InconsistentRotation: return "InconsistentRotation";
    case ErrorKind::EulerViolation: return "EulerViolation";
    case ErrorKind::AmbiguousOuterFace: return "AmbiguousOuterFace";
    case ErrorKind::BoundaryNotCycle: return "BoundaryNotCycle";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::LemmaViolated: return "LemmaViolated";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::InvalidPartialColoring: return "InvalidPartialColoring";
    case ErrorKind::MatchingCollision: return "MatchingCollision";
    case ErrorKind::InsufficientSlack: return "InsufficientSlack";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
    case ErrorKind::SolverTooLarge: return "SolverTooLarge";
    case ErrorKind::SubproblemUnsat: return "SubproblemUnsat";
    case ErrorKind::GenerationStalled: return "GenerationStalled";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InternalAssertion: return "InternalAssertion";
  }
  return "Unknown";
}

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n)), matrix_(static_cast<std::size_t>(n) * n, 0) {}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (const Edge& e : edges) {
    require(contains(e.u) && contains(e.v), ErrorKind::PreconditionViolated, "edge endpoint out of range");
    require(e.u != e.v, ErrorKind::PreconditionViolated, "self-loop");
    if (!has_edge(e.u, e.v)) add_edge_unchecked(e.u, e.v);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
  std::sort(edges_.begin(), edges_.end());
}

void Graph::add_edge_unchecked(Vertex a, Vertex b) {
  adj_[a].push_back(b);
  adj_[b].push_back(a);
  matrix_[static_cast<std::size_t>(a) * n_ + b] = 1;
  matrix_[static_cast<std::size_t>(b) * n_ + a] = 1;
  edges_.push_back(Edge::of(a, b));
}

int Graph::component_count() const {
  std::vector<int> seen(static_cast<std::size_t>(n_), 0);
  int count = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n_; ++s) {
    if (seen[s]) continue;
    ++count;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj_[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return count;
}

bool Graph::is_connected() const { return n_ <= 1 || component_count() == 1; }

bool Graph::is_acyclic() const { return edge_count() == n_ - component_count(); }

std::vector<Vertex> Graph::cut_vertices() const {
  // Iterative Hopcroft-Tarjan lowpoint computation.
  std::vector<int> disc(static_cast<std::size_t>(n_), -1), low(static_cast<std::size_t>(n_), 0);
  std::vector<int> parent(static_cast<std::size_t>(n_), -1);
  std::vector<char> is_cut(static_cast<std::size_t>(n_), 0);
  int timer = 0;
  struct Frame {
    Vertex v;
    std::size_t next;
    int children;
  };
  for (Vertex root = 0; root < n_; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, 0, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj_[f.v].size()) {
        Vertex w = adj_[f.v][f.next++];
        if (disc[w] < 0) {
          parent[w] = f.v;
          disc[w] = low[w] = timer++;
          ++f.children;
          stack.push_back({w, 0, 0});
        } else if (w != parent[f.v]) {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children >= 2) is_cut[done.v] = 1;
      } else {
        Vertex p = stack.back().v;
        low[p] = std::min(low[p], low[done.v]);
        if (parent[p] >= 0 && low[done.v] >= disc[p]) is_cut[p] = 1;
      }
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n_; ++v)
    if (is_cut[v]) out.push_back(v);
  return out;
}

bool Graph::is_two_connected() const { return n_ >= 3 && is_connected() && cut_vertices().empty(); }

Graph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<int> index(static_cast<std::size_t>(n_), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  std::vector<Edge> sub;
  for (const Edge& e : edges_)
    if (index[e.u] >= 0 && index[e.v] >= 0) sub.push_back(Edge::of(index[e.u], index[e.v]));
  return Graph(static_cast<int>(keep.size()), sub);
}

}  // namespace dpcolor
