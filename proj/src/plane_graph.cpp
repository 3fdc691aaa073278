#include "dpcolor/plane_graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "dpcolor/error.hpp"

namespace dpcolor {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool cyclic_equal(const std::vector<Vertex>& walk, std::span<const Vertex> hint) {
  if (walk.size() != hint.size() || walk.empty()) return false;
  const std::size_t k = walk.size();
  for (std::size_t shift = 0; shift < k; ++shift) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = walk[(i + shift) % k] == hint[i];
    if (ok) return true;
  }
  return false;
}

std::string join(std::span<const Vertex> vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(vs[i]);
  }
  return s;
}

}  // namespace

int PlaneGraph::rotation_index(Vertex a, Vertex b) const {
  return position_[static_cast<std::size_t>(a) * vertex_count() + b];
}

int PlaneGraph::face_of_dart(Vertex a, Vertex b) const {
  int idx = rotation_index(a, b);
  require(idx >= 0, ErrorKind::PreconditionViolated, "no dart " + std::to_string(a) + "->" + std::to_string(b));
  return dart_face_[dart_offset_[a] + idx];
}

std::vector<int> PlaneGraph::faces_around(Vertex v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < rotation_[v].size(); ++i) out.push_back(dart_face_[dart_offset_[v] + i]);
  if (out.empty()) {
    for (int f = 0; f < face_count(); ++f)
      if (faces_[f].size() == 1 && faces_[f][0] == v) out.push_back(f);
  }
  return out;
}

bool PlaneGraph::outer_is_cycle() const {
  const auto& walk = outer_boundary();
  if (walk.size() < 3) return false;
  std::set<Vertex> distinct(walk.begin(), walk.end());
  return distinct.size() == walk.size();
}

PlaneGraph build_embedding(std::vector<std::vector<Vertex>> rotation, std::span<const Vertex> outer_hint) {
  const int n = static_cast<int>(rotation.size());
  require(n >= 1, ErrorKind::InconsistentRotation, "empty graph");
  PlaneGraph pg;
  pg.position_.assign(static_cast<std::size_t>(n) * n, -1);
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < rotation[v].size(); ++i) {
      Vertex w = rotation[v][i];
      require(w >= 0 && w < n, ErrorKind::InconsistentRotation,
              "neighbour " + std::to_string(w) + " of " + std::to_string(v) + " out of range");
      require(w != v, ErrorKind::InconsistentRotation, "loop at " + std::to_string(v));
      auto& slot = pg.position_[static_cast<std::size_t>(v) * n + w];
      require(slot < 0, ErrorKind::InconsistentRotation,
              "parallel edge " + std::to_string(v) + "-" + std::to_string(w));
      slot = static_cast<int>(i);
      if (v < w) edges.push_back({v, w});
    }
  }
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : rotation[v])
      require(pg.position_[static_cast<std::size_t>(w) * n + v] >= 0, ErrorKind::InconsistentRotation,
              std::to_string(w) + " lists no " + std::to_string(v));

  pg.graph_ = Graph(n, edges);
  pg.dart_offset_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 0; v < n; ++v) pg.dart_offset_[v + 1] = pg.dart_offset_[v] + static_cast<int>(rotation[v].size());
  pg.dart_face_.assign(static_cast<std::size_t>(pg.dart_offset_[n]), -1);

  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < rotation[v].size(); ++i) {
      if (pg.dart_face_[pg.dart_offset_[v] + i] >= 0) continue;
      const int face_id = static_cast<int>(pg.faces_.size());
      std::vector<Vertex> walk;
      Vertex a = v;
      Vertex b = rotation[v][i];
      while (true) {
        int& slot = pg.dart_face_[pg.dart_offset_[a] + pg.position_[static_cast<std::size_t>(a) * n + b]];
        if (slot >= 0) break;
        slot = face_id;
        walk.push_back(a);
        const auto& rb = rotation[b];
        int at = pg.position_[static_cast<std::size_t>(b) * n + a];
        Vertex c = rb[(static_cast<std::size_t>(at) + 1) % rb.size()];
        a = b;
        b = c;
      }
      pg.faces_.push_back(std::move(walk));
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (rotation[v].empty()) pg.faces_.push_back({v});

  const int components = pg.graph_.component_count();
  const int euler = n - pg.graph_.edge_count() + pg.face_count();
  require(euler == 2 * components, ErrorKind::EulerViolation,
          "V - E + F = " + std::to_string(euler) + " but expected " + std::to_string(2 * components) +
              " (rotation system is not planar)");

  std::vector<int> matches;
  for (int f = 0; f < pg.face_count(); ++f)
    if (cyclic_equal(pg.faces_[f], outer_hint)) matches.push_back(f);
  if (matches.empty()) {
    std::vector<Vertex> reversed(outer_hint.rbegin(), outer_hint.rend());
    for (int f = 0; f < pg.face_count(); ++f)
      if (cyclic_equal(pg.faces_[f], reversed)) matches.push_back(f);
  }
  require(matches.size() == 1, ErrorKind::AmbiguousOuterFace,
          "outer hint [" + join(outer_hint) + "] matches " + std::to_string(matches.size()) + " faces");
  pg.outer_face_ = matches.front();
  pg.rotation_ = std::move(rotation);
  pg.external_.assign(static_cast<std::size_t>(n), 0);
  for (Vertex v : pg.faces_[pg.outer_face_]) pg.external_[v] = 1;
  return pg;
}

std::vector<std::vector<Vertex>> simple_cycles(const Graph& g, int max_len) {
  std::vector<std::vector<Vertex>> out;
  const int n = g.vertex_count();
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> path;
  std::function<void(Vertex)> dfs = [&](Vertex v) {
    const Vertex s = path.front();
    for (Vertex w : g.neighbors(v)) {
      if (w == s && path.size() >= 3 && path[1] < path.back()) out.push_back(path);
      if (w <= s || on_path[w] || static_cast<int>(path.size()) >= max_len) continue;
      on_path[w] = 1;
      path.push_back(w);
      dfs(w);
      path.pop_back();
      on_path[w] = 0;
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    path = {s};
    on_path[s] = 1;
    dfs(s);
    on_path[s] = 0;
  }
  return out;
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> cycle_sides(const PlaneGraph& g, std::span<const Vertex> cycle) {
  const int n = g.vertex_count();
  std::set<Edge> on_cycle;
  std::vector<char> in_cycle(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    on_cycle.insert(Edge::of(cycle[i], cycle[(i + 1) % cycle.size()]));
    in_cycle[cycle[i]] = 1;
  }
  UnionFind uf(g.face_count());
  for (const Edge& e : g.graph().edges()) {
    if (on_cycle.count(e)) continue;
    uf.unite(g.face_of_dart(e.u, e.v), g.face_of_dart(e.v, e.u));
  }
  const int outside = uf.find(g.outer_face());
  std::pair<std::vector<Vertex>, std::vector<Vertex>> sides;
  for (Vertex v = 0; v < n; ++v) {
    if (in_cycle[v]) continue;
    int f = g.faces_around(v).front();
    (uf.find(f) == outside ? sides.second : sides.first).push_back(v);
  }
  return sides;
}

std::vector<CycleWitness> enumerate_short_cycles(const PlaneGraph& g, int max_len) {
  require(max_len <= 8, ErrorKind::PreconditionViolated, "max_len must be at most 8");
  std::vector<CycleWitness> out;
  for (auto& cyc : simple_cycles(g.graph(), max_len)) {
    CycleWitness w;
    w.length = static_cast<int>(cyc.size());
    std::tie(w.interior, w.exterior) = cycle_sides(g, cyc);
    w.is_separating = !w.interior.empty() && !w.exterior.empty();
    w.is_good = w.length <= 7;
    w.vertices = std::move(cyc);
    out.push_back(std::move(w));
  }
  return out;
}

ClassReport check_class_p45(const PlaneGraph& g) {
  ClassReport r;
  r.connected = g.graph().is_connected();
  r.two_connected = g.graph().is_two_connected();
  for (auto& cyc : simple_cycles(g.graph(), 5)) {
    if (cyc.size() == 4 && !r.four_cycle) r.four_cycle = cyc;
    if (cyc.size() == 5 && !r.five_cycle) r.five_cycle = cyc;
  }
  r.outer_is_cycle = g.outer_is_cycle();
  r.outer_is_good = r.outer_is_cycle && g.outer_boundary().size() <= 7;
  if (r.outer_is_cycle) {
    const auto& d = g.outer_boundary();
    const std::size_t k = d.size();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 2; j < k; ++j) {
        if (i == 0 && j == k - 1) continue;
        if (g.has_edge(d[i], d[j])) r.outer_chords.push_back(Edge::of(d[i], d[j]));
      }
    std::sort(r.outer_chords.begin(), r.outer_chords.end());
  }
  return r;
}

std::vector<std::vector<Vertex>> splitting_paths(const PlaneGraph& g, int max_len) {
  require(g.outer_is_cycle(), ErrorKind::BoundaryNotCycle, "outer boundary is not a cycle");
  std::vector<std::vector<Vertex>> out;
  const int n = g.vertex_count();
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> path;
  std::function<void(Vertex)> extend = [&](Vertex v) {
    for (Vertex w : g.graph().neighbors(v)) {
      if (on_path[w]) continue;
      if (g.is_external(w)) {
        if (path.size() >= 2 && path.front() < w) {
          path.push_back(w);
          out.push_back(path);
          path.pop_back();
        }
        continue;
      }
      if (static_cast<int>(path.size()) >= max_len) continue;  // adding w and an end would exceed
      on_path[w] = 1;
      path.push_back(w);
      extend(w);
      path.pop_back();
      on_path[w] = 0;
    }
  };
  for (Vertex a : g.outer_boundary()) {
    path = {a};
    on_path[a] = 1;
    for (Vertex w : g.graph().neighbors(a)) {
      if (g.is_external(w) || max_len < 2) continue;
      on_path[w] = 1;
      path.push_back(w);
      extend(w);
      path.pop_back();
      on_path[w] = 0;
    }
    on_path[a] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

int triangle_count(const Graph& g, Vertex v) {
  const auto& nb = g.neighbors(v);
  int count = 0;
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j)
      if (g.has_edge(nb[i], nb[j])) ++count;
  return count;
}

bool is_isolated_neighbor(const Graph& g, Vertex v, Vertex u) {
  if (!g.has_edge(v, u)) return false;
  for (Vertex w : g.neighbors(v))
    if (w != u && g.has_edge(w, u)) return false;
  return true;
}

bool is_internal_isolated_3_neighbor(const PlaneGraph& g, Vertex v, Vertex u) {
  return g.is_internal(u) && g.degree(u) == 3 && is_isolated_neighbor(g.graph(), v, u);
}

bool is_poor(const PlaneGraph& g, Vertex v) {
  if (!g.is_internal(v) || triangle_count(g.graph(), v) < 1) return false;
  int iso3 = 0;
  for (Vertex u : g.graph().neighbors(v))
    if (is_internal_isolated_3_neighbor(g, v, u)) ++iso3;
  if (g.degree(v) == 3) return iso3 >= 1;
  if (g.degree(v) == 4) return iso3 >= 2;
  return false;
}

VertexProfile vertex_profile(const PlaneGraph& g, Vertex v) {
  require(g.graph().contains(v), ErrorKind::PreconditionViolated, "no vertex " + std::to_string(v));
  VertexProfile p;
  p.degree = g.degree(v);
  p.is_internal = g.is_internal(v);
  p.triangle_count = triangle_count(g.graph(), v);
  for (Vertex u : g.graph().neighbors(v))
    if (is_isolated_neighbor(g.graph(), v, u)) p.isolated_neighbors.push_back(u);
  p.is_poor = is_poor(g, v);
  return p;
}

IdentifyResult identify_vertices(const PlaneGraph& g, Vertex x, Vertex y, Vertex z, std::span<const Vertex> removed) {
  const Graph& G = g.graph();
  const int n = g.vertex_count();
  auto pre = [](bool cond, const std::string& what) { require(cond, ErrorKind::PreconditionViolated, what); };
  pre(G.contains(x) && G.contains(y) && G.contains(z), "vertex out of range");
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  for (Vertex r : removed) {
    pre(G.contains(r), "removed vertex out of range");
    pre(g.is_internal(r), "removed vertex " + std::to_string(r) + " is external");
    gone[r] = 1;
  }
  pre(gone[z] != 0, "z must belong to the removed set");
  pre(g.degree(z) >= 4, "z must have degree at least 4");
  pre(x != y, "x and y coincide");
  pre(G.has_edge(z, x) && G.has_edge(z, y), "x and y must be neighbours of z");
  pre(!gone[x] && !gone[y], "x and y must survive the deletion");
  pre(!G.has_edge(x, y), "x and y are adjacent");
  const int d = g.degree(z);
  const int px = g.rotation_index(z, x);
  const int py = g.rotation_index(z, y);
  const int gap = ((py - px) % d + d) % d;
  pre(gap >= 2 && d - gap >= 2, "x and y are consecutive around z");
  pre(!(g.is_external(x) && g.is_external(y)), "x and y both lie on the outer boundary");
  for (Vertex w : G.neighbors(x))
    pre(w == z || !G.has_edge(w, y), "x and y share the neighbour " + std::to_string(w));

  IdentifyResult res;
  res.old_to_new.assign(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    if (gone[v] || v == y) continue;
    res.old_to_new[v] = static_cast<Vertex>(res.new_to_old.size());
    res.new_to_old.push_back(v);
  }
  res.vstar = res.old_to_new[x];
  res.old_to_new[y] = res.vstar;
  res.x = x;
  res.y = y;

  auto tail_after = [&](Vertex a, Vertex pivot) {
    const auto& rot = g.rotation(a);
    const std::size_t k = rot.size();
    const std::size_t start = static_cast<std::size_t>(g.rotation_index(a, pivot));
    std::vector<Vertex> out;
    for (std::size_t i = 1; i < k; ++i) {
      Vertex b = rot[(start + i) % k];
      if (!gone[b]) out.push_back(res.old_to_new[b]);
    }
    return out;
  };

  std::vector<std::vector<Vertex>> rot(res.new_to_old.size());
  for (std::size_t i = 0; i < res.new_to_old.size(); ++i) {
    Vertex a = res.new_to_old[i];
    if (a == x) {
      rot[i] = tail_after(x, z);
      auto from_y = tail_after(y, z);
      rot[i].insert(rot[i].end(), from_y.begin(), from_y.end());
      continue;
    }
    for (Vertex b : g.rotation(a))
      if (!gone[b]) rot[i].push_back(res.old_to_new[b]);
  }

  std::vector<Vertex> outer;
  for (Vertex v : g.outer_boundary()) outer.push_back(res.old_to_new[v]);
  try {
    res.graph = build_embedding(std::move(rot), outer);
  } catch (const Error& e) {
    fail(ErrorKind::LemmaViolated, std::string("identified graph is not a valid plane graph: ") + e.what());
  }

  const ClassReport cls = check_class_p45(res.graph);
  if (cls.four_cycle) fail(ErrorKind::LemmaViolated, "identification created the 4-cycle " + join(*cls.four_cycle));
  if (cls.five_cycle) fail(ErrorKind::LemmaViolated, "identification created the 5-cycle " + join(*cls.five_cycle));
  const auto& d_old = g.outer_boundary();
  for (std::size_t i = 0; i < d_old.size(); ++i)
    for (std::size_t j = i + 1; j < d_old.size(); ++j) {
      const bool before = G.has_edge(d_old[i], d_old[j]);
      const bool after = res.graph.has_edge(outer[i], outer[j]);
      require(before == after, ErrorKind::LemmaViolated,
              "boundary subgraph changed at " + std::to_string(d_old[i]) + "-" + std::to_string(d_old[j]));
    }
  return res;
}

}  // namespace dpcolor
