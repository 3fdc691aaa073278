#include "dpcolor/cover.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "dpcolor/error.hpp"

namespace dpcolor {

namespace {

std::string edge_name(Vertex a, Vertex b) { return std::to_string(a) + "-" + std::to_string(b); }

std::vector<IndexPair> flipped(const std::vector<IndexPair>& pairs) {
  std::vector<IndexPair> out;
  out.reserve(pairs.size());
  for (auto [i, j] : pairs) out.emplace_back(j, i);
  return out;
}

}  // namespace

void MultiColoring::assign(Vertex v, std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  assignment_[v] = std::move(indices);
}

std::vector<Vertex> MultiColoring::colored_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(); ++v)
    if (is_colored(v)) out.push_back(v);
  return out;
}

std::vector<IndexPair> Cover::matching(Vertex a, Vertex b) const {
  auto it = matchings_.find(Edge::of(a, b));
  if (it == matchings_.end()) return {};
  return a < b ? it->second : flipped(it->second);
}

void Cover::set_matching(Vertex a, Vertex b, std::vector<IndexPair> pairs_from_a) {
  if (a > b) pairs_from_a = flipped(pairs_from_a);
  std::sort(pairs_from_a.begin(), pairs_from_a.end());
  matchings_[Edge::of(a, b)] = std::move(pairs_from_a);
}

void Cover::add_pair(Vertex a, int i, Vertex b, int j) {
  auto& pairs = matchings_[Edge::of(a, b)];
  IndexPair p = a < b ? IndexPair{i, j} : IndexPair{j, i};
  pairs.insert(std::lower_bound(pairs.begin(), pairs.end(), p), p);
}

std::vector<CoverViolation> validate_cover(const Graph& g, const Cover& c, std::span<const int> expected_sizes) {
  using K = CoverViolation::Kind;
  std::vector<CoverViolation> out;
  if (c.vertex_count() != g.vertex_count()) {
    out.push_back({K::SizeMismatch, {0, 0},
                   "cover has " + std::to_string(c.vertex_count()) + " vertices, graph has " +
                       std::to_string(g.vertex_count())});
    return out;
  }
  if (!expected_sizes.empty()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (static_cast<std::size_t>(v) >= expected_sizes.size() || c.size(v) != expected_sizes[v])
        out.push_back({K::SizeMismatch, {v, v}, "|L(" + std::to_string(v) + ")| = " + std::to_string(c.size(v))});
  }
  for (const auto& [e, pairs] : c.matchings()) {
    if (!g.contains(e.u) || !g.contains(e.v) || !g.has_edge(e.u, e.v)) {
      out.push_back({K::UnknownEdge, e, "matching on non-edge " + edge_name(e.u, e.v)});
      continue;
    }
    std::set<int> left, right;
    for (auto [i, j] : pairs) {
      if (i < 0 || i >= c.size(e.u) || j < 0 || j >= c.size(e.v)) {
        out.push_back({K::ColorOutOfRange, e,
                       "pair (" + std::to_string(i) + "," + std::to_string(j) + ") on " + edge_name(e.u, e.v)});
        continue;
      }
      if (!left.insert(i).second)
        out.push_back({K::NotAMatching, e, "colour " + std::to_string(i) + " of " + std::to_string(e.u) +
                                               " matched twice on " + edge_name(e.u, e.v)});
      if (!right.insert(j).second)
        out.push_back({K::NotAMatching, e, "colour " + std::to_string(j) + " of " + std::to_string(e.v) +
                                               " matched twice on " + edge_name(e.u, e.v)});
    }
  }
  return out;
}

Cover straight_cover(const Graph& g, int size) {
  return straight_cover(g, std::vector<int>(static_cast<std::size_t>(g.vertex_count()), size));
}

Cover straight_cover(const Graph& g, std::span<const int> sizes) {
  Cover c(std::vector<int>(sizes.begin(), sizes.end()));
  for (const Edge& e : g.edges()) {
    std::vector<IndexPair> pairs;
    for (int i = 0; i < std::min(sizes[e.u], sizes[e.v]); ++i) pairs.emplace_back(i, i);
    c.set_matching(e.u, e.v, std::move(pairs));
  }
  return c;
}

bool is_straight(const Cover& c, Vertex a, Vertex b) {
  for (auto [i, j] : c.matching(a, b))
    if (i != j) return false;
  return true;
}

Cover cover_from_lists(const Graph& g, std::span<const std::vector<int>> lists) {
  require(static_cast<int>(lists.size()) == g.vertex_count(), ErrorKind::PreconditionViolated,
          "one list per vertex required");
  std::vector<std::vector<int>> sorted(lists.begin(), lists.end());
  std::vector<int> sizes;
  for (auto& l : sorted) {
    std::sort(l.begin(), l.end());
    require(std::adjacent_find(l.begin(), l.end()) == l.end(), ErrorKind::PreconditionViolated,
            "list with a repeated colour");
    sizes.push_back(static_cast<int>(l.size()));
  }
  Cover c(sizes);
  for (const Edge& e : g.edges()) {
    std::vector<IndexPair> pairs;
    const auto& a = sorted[e.u];
    const auto& b = sorted[e.v];
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
      if (a[i] < b[j]) {
        ++i;
      } else if (b[j] < a[i]) {
        ++j;
      } else {
        pairs.emplace_back(static_cast<int>(i++), static_cast<int>(j++));
      }
    }
    c.set_matching(e.u, e.v, std::move(pairs));
  }
  return c;
}

StraightenResult straighten_tree(const Cover& c, std::span<const Edge> tree) {
  const int n = c.vertex_count();
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const Edge& e : tree) {
    require(e.u >= 0 && e.v < n && e.u != e.v, ErrorKind::NotATree, "bad tree edge");
    int a = find(e.u), b = find(e.v);
    require(a != b, ErrorKind::NotATree, "edge " + edge_name(e.u, e.v) + " closes a cycle");
    parent[a] = b;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  StraightenResult res;
  res.permutation.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    res.permutation[v].resize(static_cast<std::size_t>(c.size(v)));
    std::iota(res.permutation[v].begin(), res.permutation[v].end(), 0);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::vector<Vertex> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Vertex p = queue[qi];
      for (Vertex w : adj[p]) {
        if (seen[w]) continue;
        seen[w] = 1;
        queue.push_back(w);
        const int fw = c.size(w);
        std::vector<int> perm(static_cast<std::size_t>(fw), -1);
        std::vector<char> used(static_cast<std::size_t>(fw), 0);
        for (auto [i, j] : c.matching(p, w)) {
          int target = res.permutation[p][i];
          require(target < fw, ErrorKind::PreconditionViolated,
                  "edge " + edge_name(p, w) + " cannot be straightened: index " + std::to_string(target) +
                      " exceeds |L(" + std::to_string(w) + ")|");
          require(perm[j] < 0 && !used[target], ErrorKind::PreconditionViolated,
                  "M_" + edge_name(p, w) + " is not a matching");
          perm[j] = target;
          used[target] = 1;
        }
        int next = 0;
        for (int j = 0; j < fw; ++j) {
          if (perm[j] >= 0) continue;
          while (used[next]) ++next;
          perm[j] = next;
          used[next] = 1;
        }
        res.permutation[w] = std::move(perm);
      }
    }
  }

  res.cover = Cover(c.sizes());
  for (const auto& [e, pairs] : c.matchings()) {
    std::vector<IndexPair> moved;
    for (auto [i, j] : pairs) moved.emplace_back(res.permutation[e.u][i], res.permutation[e.v][j]);
    res.cover.set_matching(e.u, e.v, std::move(moved));
  }
  return res;
}

MultiColoring permute_coloring(const MultiColoring& phi, const std::vector<std::vector<int>>& permutation,
                               bool inverse) {
  MultiColoring out(phi.vertex_count());
  for (Vertex v = 0; v < phi.vertex_count(); ++v) {
    if (!phi.is_colored(v)) continue;
    const auto& p = permutation[v];
    std::vector<int> map = p;
    if (inverse)
      for (std::size_t i = 0; i < p.size(); ++i) map[p[i]] = static_cast<int>(i);
    std::vector<int> moved;
    for (int i : phi.colors(v)) moved.push_back(map[i]);
    out.assign(v, std::move(moved));
  }
  return out;
}

std::vector<Color> color_neighbors(const Cover& c, Color x) {
  std::vector<Color> out;
  for (const auto& [e, pairs] : c.matchings()) {
    if (e.u != x.owner && e.v != x.owner) continue;
    const bool left = e.u == x.owner;
    for (auto [i, j] : pairs) {
      if (left && i == x.index) out.push_back({e.v, j});
      if (!left && j == x.index) out.push_back({e.u, i});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<int>& ResidualCover::list_of(Vertex v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  require(it != vertices.end() && *it == v, ErrorKind::PreconditionViolated,
          "vertex " + std::to_string(v) + " is not in the residual domain");
  return lists[static_cast<std::size_t>(it - vertices.begin())];
}

ResidualCover residual(const Graph& g, const Cover& c, const MultiColoring& phi, std::span<const Vertex> z) {
  const int n = g.vertex_count();
  std::vector<char> in_z(static_cast<std::size_t>(n), 0);
  for (Vertex v : z) {
    require(g.contains(v), ErrorKind::PreconditionViolated, "Z vertex out of range");
    in_z[v] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (in_z[v]) continue;
    require(phi.is_colored(v), ErrorKind::InvalidPartialColoring, "vertex " + std::to_string(v) + " is uncoloured");
    for (int i : phi.colors(v))
      require(i >= 0 && i < c.size(v), ErrorKind::InvalidPartialColoring,
              "colour " + std::to_string(i) + " outside L(" + std::to_string(v) + ")");
  }
  for (const Edge& e : g.edges()) {
    if (in_z[e.u] || in_z[e.v]) continue;
    const auto& a = phi.colors(e.u);
    const auto& b = phi.colors(e.v);
    for (auto [i, j] : c.matching(e.u, e.v))
      require(!std::binary_search(a.begin(), a.end(), i) || !std::binary_search(b.begin(), b.end(), j),
              ErrorKind::InvalidPartialColoring,
              "conflict on " + edge_name(e.u, e.v) + " at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }

  ResidualCover r;
  r.vertices.assign(z.begin(), z.end());
  std::sort(r.vertices.begin(), r.vertices.end());
  r.vertices.erase(std::unique(r.vertices.begin(), r.vertices.end()), r.vertices.end());
  for (Vertex v : r.vertices) {
    std::vector<char> banned(static_cast<std::size_t>(c.size(v)), 0);
    int bound = c.size(v);
    for (Vertex u : g.neighbors(v)) {
      if (in_z[u]) continue;
      const auto& pu = phi.colors(u);
      bound -= static_cast<int>(pu.size());
      for (auto [i, j] : c.matching(v, u))
        if (std::binary_search(pu.begin(), pu.end(), j)) banned[i] = 1;
    }
    std::vector<int> keep;
    for (int i = 0; i < c.size(v); ++i)
      if (!banned[i]) keep.push_back(i);
    r.lists.push_back(std::move(keep));
    r.lower_bounds.push_back(bound);
  }
  for (const Edge& e : g.edges()) {
    if (!in_z[e.u] || !in_z[e.v]) continue;
    const auto& a = r.list_of(e.u);
    const auto& b = r.list_of(e.v);
    std::vector<IndexPair> kept;
    for (auto [i, j] : c.matching(e.u, e.v))
      if (std::binary_search(a.begin(), a.end(), i) && std::binary_search(b.begin(), b.end(), j))
        kept.emplace_back(i, j);
    r.matchings[e] = std::move(kept);
  }
  return r;
}

Cover inherited_cover(const Graph& g, const Cover& c, const IdentifyResult& id) {
  require(id.x >= 0 && id.y >= 0, ErrorKind::PreconditionViolated, "identification record is incomplete");
  require(c.size(id.x) == c.size(id.y), ErrorKind::PreconditionViolated, "x and y have lists of different sizes");
  const Graph& h = id.graph.graph();
  std::vector<int> sizes;
  for (Vertex a : id.new_to_old) sizes.push_back(c.size(a));
  Cover out(sizes);
  for (const Edge& e : h.edges()) {
    if (e.u != id.vstar && e.v != id.vstar) {
      out.set_matching(e.u, e.v, c.matching(id.new_to_old[e.u], id.new_to_old[e.v]));
      continue;
    }
    const Vertex other = e.u == id.vstar ? e.v : e.u;
    const Vertex u = id.new_to_old[other];
    const bool via_x = g.has_edge(id.x, u);
    const bool via_y = g.has_edge(id.y, u);
    require(!(via_x && via_y), ErrorKind::MatchingCollision,
            "vertex " + std::to_string(u) + " is adjacent to both identified vertices");
    out.set_matching(id.vstar, other, c.matching(via_x ? id.x : id.y, u));
  }
  return out;
}

TreeLists tree_cover_to_lists(const Graph& tree, const Cover& c) {
  require(tree.is_acyclic(), ErrorKind::NotATree, "cover graph contains a cycle");
  require(tree.vertex_count() == c.vertex_count(), ErrorKind::PreconditionViolated, "cover and tree differ in size");
  const int n = tree.vertex_count();
  TreeLists out;
  out.saturated = c;
  for (const Edge& e : tree.edges()) {
    const bool u_small = c.size(e.u) <= c.size(e.v);
    const Vertex s = u_small ? e.u : e.v;
    const Vertex b = u_small ? e.v : e.u;
    auto pairs = c.matching(s, b);
    std::vector<char> s_used(static_cast<std::size_t>(c.size(s)), 0), b_used(static_cast<std::size_t>(c.size(b)), 0);
    for (auto [i, j] : pairs) {
      s_used[i] = 1;
      b_used[j] = 1;
    }
    int j = 0;
    for (int i = 0; i < c.size(s); ++i) {
      if (s_used[i]) continue;
      while (b_used[j]) ++j;
      pairs.emplace_back(i, j);
      b_used[j] = 1;
    }
    out.saturated.set_matching(s, b, std::move(pairs));
  }

  std::vector<int> offset(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 0; v < n; ++v) offset[v + 1] = offset[v] + c.size(v);
  std::vector<int> parent(static_cast<std::size_t>(offset[n]));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& [e, pairs] : out.saturated.matchings())
    for (auto [i, j] : pairs) parent[find(offset[e.u] + i)] = find(offset[e.v] + j);

  std::vector<int> component(parent.size(), -1);
  int next = 0;
  out.lists.resize(static_cast<std::size_t>(n));
  out.back.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    for (int i = 0; i < c.size(v); ++i) {
      int root = find(offset[v] + i);
      if (component[root] < 0) component[root] = next++;
      const int id = component[root];
      require(out.back[v].emplace(id, i).second, ErrorKind::InternalAssertion,
              "component meets L(" + std::to_string(v) + ") twice");
      out.lists[v].push_back(id);
    }
    std::sort(out.lists[v].begin(), out.lists[v].end());
  }
  return out;
}

}  // namespace dpcolor
