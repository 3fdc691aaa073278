#include "dpcolor/reducible.hpp"

#include <algorithm>
#include <set>

#include "dpcolor/error.hpp"

namespace dpcolor {

namespace {

bool internal_3(const PlaneGraph& g, Vertex v) { return g.is_internal(v) && g.degree(v) == 3; }

bool iso3(const PlaneGraph& g, Vertex v, Vertex u) { return is_internal_isolated_3_neighbor(g, v, u); }

// Rotation at p read from the neighbour after q, q itself excluded.
std::vector<Vertex> after(const PlaneGraph& g, Vertex p, Vertex q) {
  const auto& rot = g.rotation(p);
  const std::size_t k = rot.size();
  const std::size_t start = static_cast<std::size_t>(g.rotation_index(p, q));
  std::vector<Vertex> out;
  for (std::size_t i = 1; i < k; ++i) out.push_back(rot[(start + i) % k]);
  return out;
}

bool is_boundary_edge(const PlaneGraph& g, Vertex a, Vertex b) {
  const auto& d = g.outer_boundary();
  const std::size_t k = d.size();
  for (std::size_t i = 0; i < k; ++i)
    if (Edge::of(d[i], d[(i + 1) % k]) == Edge::of(a, b)) return true;
  return false;
}

std::vector<Vertex> common_neighbors(const Graph& g, Vertex a, Vertex b) {
  std::vector<Vertex> out;
  for (Vertex w : g.neighbors(a))
    if (w != b && g.has_edge(w, b)) out.push_back(w);
  return out;
}

std::vector<Vertex> iso3_neighbors(const PlaneGraph& g, Vertex v) {
  std::vector<Vertex> out;
  for (Vertex u : g.graph().neighbors(v))
    if (iso3(g, v, u)) out.push_back(u);
  return out;
}

template <typename F>
void for_each_triple(const std::vector<Vertex>& s, F&& f) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      for (std::size_t k = j + 1; k < s.size(); ++k) f(s[i], s[j], s[k]);
}

// v1, v2, v3 in rotation order at v starting after w, skipping u.
std::vector<Vertex> leaves_after(const PlaneGraph& g, Vertex v, Vertex w, Vertex u) {
  std::vector<Vertex> out;
  for (Vertex x : after(g, v, w))
    if (x != u) out.push_back(x);
  return out;
}

bool pairwise_nonadjacent(const Graph& g, std::initializer_list<Vertex> vs) {
  for (auto a = vs.begin(); a != vs.end(); ++a)
    for (auto b = std::next(a); b != vs.end(); ++b)
      if (*a == *b || g.has_edge(*a, *b)) return false;
  return true;
}

void check_input(const PlaneGraph& g) {
  const ClassReport cls = check_class_p45(g);
  require(!cls.four_cycle && !cls.five_cycle, ErrorKind::PreconditionViolated,
          "graph contains a 4- or 5-cycle");
  require(cls.outer_is_good, ErrorKind::PreconditionViolated, "outer boundary is not a cycle of length at most 7");
}

}  // namespace

std::string_view to_string(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::InternalDeg2: return "InternalDeg2";
    case ConfigKind::CutVertex: return "CutVertex";
    case ConfigKind::SeparatingGoodCycle: return "SeparatingGoodCycle";
    case ConfigKind::BoundaryChord: return "BoundaryChord";
    case ConfigKind::SplitPath2NonTriangle: return "SplitPath2NonTriangle";
    case ConfigKind::SplitPath3: return "SplitPath3";
    case ConfigKind::L10_Claw4: return "L10_Claw4";
    case ConfigKind::L11_Adjacent4s: return "L11_Adjacent4s";
    case ConfigKind::L12_TrianglePoorSmallU: return "L12_TrianglePoorSmallU";
    case ConfigKind::L13_FiveStar: return "L13_FiveStar";
    case ConfigKind::L14_Broom: return "L14_Broom";
    case ConfigKind::L15_DoubleClaw: return "L15_DoubleClaw";
  }
  return "Unknown";
}

ConfigKind config_kind_from_string(std::string_view name) {
  for (int k = 0; k <= static_cast<int>(ConfigKind::L15_DoubleClaw); ++k)
    if (to_string(static_cast<ConfigKind>(k)) == name) return static_cast<ConfigKind>(k);
  fail(ErrorKind::Parse, "unknown configuration kind '" + std::string(name) + "'");
}

bool is_trivial_property(ConfigKind kind) {
  return kind == ConfigKind::InternalDeg2 || kind == ConfigKind::CutVertex ||
         kind == ConfigKind::SeparatingGoodCycle || kind == ConfigKind::BoundaryChord;
}

std::vector<ConfigReport> find_reducible(const PlaneGraph& g) {
  check_input(g);
  const Graph& G = g.graph();
  const int n = g.vertex_count();
  std::vector<ConfigReport> out;
  auto emit = [&](ConfigKind k, std::vector<Vertex> w, std::vector<Edge> e = {}) {
    out.push_back({k, std::move(w), std::move(e)});
  };

  for (Vertex v = 0; v < n; ++v)
    if (g.is_internal(v) && g.degree(v) <= 2) emit(ConfigKind::InternalDeg2, {v});
  for (Vertex v : G.cut_vertices()) emit(ConfigKind::CutVertex, {v});
  for (const auto& c : enumerate_short_cycles(g, 7))
    if (c.is_separating) emit(ConfigKind::SeparatingGoodCycle, c.vertices);
  for (const Edge& e : check_class_p45(g).outer_chords) emit(ConfigKind::BoundaryChord, {e.u, e.v}, {e});
  for (const auto& p : splitting_paths(g, 3)) {
    if (p.size() == 3 && !is_boundary_edge(g, p[0], p[2])) emit(ConfigKind::SplitPath2NonTriangle, p);
    if (p.size() == 4) emit(ConfigKind::SplitPath3, p);
  }

  for (Vertex v = 0; v < n; ++v) {
    if (!g.is_internal(v) || g.degree(v) != 4) continue;
    std::vector<Vertex> threes;
    for (Vertex u : G.neighbors(v))
      if (internal_3(g, u)) threes.push_back(u);
    for_each_triple(threes, [&](Vertex a, Vertex b, Vertex c) {
      if (pairwise_nonadjacent(G, {a, b, c})) emit(ConfigKind::L10_Claw4, {v, a, b, c});
    });
  }

  for (Vertex p = 0; p < n; ++p) {
    if (!g.is_internal(p) || g.degree(p) != 4) continue;
    for (Vertex q : G.neighbors(p)) {
      if (!g.is_internal(q) || g.degree(q) != 4) continue;
      const auto abc = after(g, p, q);
      const auto def = after(g, q, p);
      for (int first : {0, 1}) {
        const Vertex s = def[first], t = def[first + 1];
        if (!internal_3(g, s) || !internal_3(g, t) || G.has_edge(s, t)) continue;
        if (std::find(abc.begin(), abc.end(), s) != abc.end() || std::find(abc.begin(), abc.end(), t) != abc.end())
          continue;
        emit(ConfigKind::L11_Adjacent4s, {p, q, s, t, abc[0], abc[2]}, {Edge::of(p, q)});
      }
    }
  }

  for (Vertex v = 0; v < n; ++v) {
    if (!is_poor(g, v)) continue;
    std::vector<Vertex> leaves = iso3_neighbors(g, v);
    if (g.degree(v) == 3) leaves.resize(1);
    for (Vertex u : G.neighbors(v)) {
      if (!g.is_internal(u) || g.degree(u) > 4) continue;
      for (Vertex w : common_neighbors(G, u, v)) {
        std::vector<Vertex> wit{u, v, w};
        wit.insert(wit.end(), leaves.begin(), leaves.end());
        emit(ConfigKind::L12_TrianglePoorSmallU, wit);
      }
    }
  }

  for (Vertex v = 0; v < n; ++v) {
    if (!g.is_internal(v) || g.degree(v) != 5) continue;
    bool all = true;
    for (Vertex u : G.neighbors(v)) all = all && iso3(g, v, u);
    if (!all) continue;
    std::vector<Vertex> wit{v};
    wit.insert(wit.end(), g.rotation(v).begin(), g.rotation(v).end());
    emit(ConfigKind::L13_FiveStar, wit);
  }

  for (Vertex u = 0; u < n; ++u) {
    if (!is_poor(g, u)) continue;
    for (Vertex v : G.neighbors(u)) {
      if (!g.is_internal(v) || g.degree(v) != 5) continue;
      const auto ws = common_neighbors(G, u, v);
      for (Vertex w : ws) {
        if (g.degree(u) == 3) {
          Vertex up = -1;
          for (Vertex x : G.neighbors(u))
            if (x != v && x != w) up = x;
          if (up < 0 || !iso3(g, u, up)) continue;
          for_each_triple(iso3_neighbors(g, v), [&](Vertex a, Vertex b, Vertex c) {
            emit(ConfigKind::L14_Broom, {up, u, v, w, a, b, c});
          });
        } else {
          const auto leaves = iso3_neighbors(g, v);
          if (leaves.size() < 3) continue;
          const auto ord = leaves_after(g, v, w, u);
          const auto ui = iso3_neighbors(g, u);
          if (ord.size() != 3 || ui.size() != 2) continue;
          emit(ConfigKind::L15_DoubleClaw, {u, v, w, ui[0], ui[1], ord[0], ord[1], ord[2]});
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const ConfigReport& a, const ConfigReport& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.witness < b.witness;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool check_report(const PlaneGraph& g, const ConfigReport& r) {
  const Graph& G = g.graph();
  const auto& w = r.witness;
  for (Vertex v : w)
    if (!G.contains(v)) return false;
  auto sz = [&](std::size_t k) { return w.size() == k; };
  auto poor3 = [&](Vertex v) { return is_poor(g, v) && g.degree(v) == 3; };
  auto poor4 = [&](Vertex v) { return is_poor(g, v) && g.degree(v) == 4; };
  auto triangle = [&](Vertex a, Vertex b, Vertex c) {
    return G.has_edge(a, b) && G.has_edge(b, c) && G.has_edge(a, c);
  };
  switch (r.kind) {
    case ConfigKind::InternalDeg2: return sz(1) && g.is_internal(w[0]) && g.degree(w[0]) <= 2;
    case ConfigKind::CutVertex: {
      if (!sz(1)) return false;
      std::vector<Vertex> keep;
      for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (v != w[0]) keep.push_back(v);
      return G.induced(keep).component_count() > G.component_count();
    }
    case ConfigKind::SeparatingGoodCycle: {
      if (w.size() < 3 || w.size() > 7 || std::set<Vertex>(w.begin(), w.end()).size() != w.size()) return false;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (!G.has_edge(w[i], w[(i + 1) % w.size()])) return false;
      auto [in, out] = cycle_sides(g, w);
      return !in.empty() && !out.empty();
    }
    case ConfigKind::BoundaryChord:
      return sz(2) && g.is_external(w[0]) && g.is_external(w[1]) && G.has_edge(w[0], w[1]) &&
             !is_boundary_edge(g, w[0], w[1]);
    case ConfigKind::SplitPath2NonTriangle:
      return sz(3) && w[0] != w[2] && g.is_external(w[0]) && g.is_external(w[2]) && g.is_internal(w[1]) &&
             G.has_edge(w[0], w[1]) && G.has_edge(w[1], w[2]) && !is_boundary_edge(g, w[0], w[2]);
    case ConfigKind::SplitPath3:
      return sz(4) && w[0] != w[3] && g.is_external(w[0]) && g.is_external(w[3]) && g.is_internal(w[1]) &&
             g.is_internal(w[2]) && w[1] != w[2] && G.has_edge(w[0], w[1]) && G.has_edge(w[1], w[2]) &&
             G.has_edge(w[2], w[3]);
    case ConfigKind::L10_Claw4:
      return sz(4) && g.is_internal(w[0]) && g.degree(w[0]) == 4 &&
             std::all_of(w.begin() + 1, w.end(), [&](Vertex x) { return G.has_edge(w[0], x) && internal_3(g, x); }) &&
             pairwise_nonadjacent(G, {w[1], w[2], w[3]});
    case ConfigKind::L11_Adjacent4s: {
      if (!sz(6)) return false;
      const Vertex p = w[0], q = w[1], s = w[2], t = w[3];
      if (!G.has_edge(p, q) || !g.is_internal(p) || !g.is_internal(q) || g.degree(p) != 4 || g.degree(q) != 4)
        return false;
      const auto abc = after(g, p, q);
      const auto def = after(g, q, p);
      const bool consecutive = (def[0] == s && def[1] == t) || (def[1] == s && def[2] == t);
      return consecutive && internal_3(g, s) && internal_3(g, t) && !G.has_edge(s, t) && w[4] == abc[0] &&
             w[5] == abc[2] && std::find(abc.begin(), abc.end(), s) == abc.end() &&
             std::find(abc.begin(), abc.end(), t) == abc.end();
    }
    case ConfigKind::L12_TrianglePoorSmallU: {
      if (w.size() < 4) return false;
      const Vertex u = w[0], v = w[1], x = w[2];
      if (!triangle(u, v, x) || !g.is_internal(u) || g.degree(u) > 4) return false;
      if (poor3(v)) return sz(4) && iso3(g, v, w[3]);
      if (poor4(v)) return sz(5) && iso3(g, v, w[3]) && iso3(g, v, w[4]) && w[3] != w[4];
      return false;
    }
    case ConfigKind::L13_FiveStar: {
      if (!sz(6) || !g.is_internal(w[0]) || g.degree(w[0]) != 5) return false;
      std::set<Vertex> leaves(w.begin() + 1, w.end());
      return leaves.size() == 5 && std::all_of(leaves.begin(), leaves.end(), [&](Vertex x) { return iso3(g, w[0], x); });
    }
    case ConfigKind::L14_Broom: {
      if (!sz(7)) return false;
      const Vertex up = w[0], u = w[1], v = w[2], x = w[3];
      return triangle(u, v, x) && poor3(u) && iso3(g, u, up) && g.is_internal(v) && g.degree(v) == 5 &&
             iso3(g, v, w[4]) && iso3(g, v, w[5]) && iso3(g, v, w[6]) &&
             std::set<Vertex>(w.begin() + 4, w.end()).size() == 3;
    }
    case ConfigKind::L15_DoubleClaw: {
      if (!sz(8)) return false;
      const Vertex u = w[0], v = w[1], x = w[2];
      return triangle(u, v, x) && poor4(u) && g.is_internal(v) && g.degree(v) == 5 && iso3(g, u, w[3]) &&
             iso3(g, u, w[4]) && w[3] != w[4] && iso3(g, v, w[5]) && iso3(g, v, w[6]) && iso3(g, v, w[7]) &&
             leaves_after(g, v, x, u) == std::vector<Vertex>{w[5], w[6], w[7]};
    }
  }
  return false;
}

ReductionPlan explain_reduction(const ConfigReport& r, const PlaneGraph& g) {
  require(!is_trivial_property(r.kind) && r.kind != ConfigKind::SplitPath2NonTriangle &&
              r.kind != ConfigKind::SplitPath3,
          ErrorKind::UnsupportedKind, std::string(to_string(r.kind)) + " has no tree-colorer reduction");
  require(check_report(g, r), ErrorKind::PreconditionViolated, "report does not hold in this graph");
  const auto& w = r.witness;
  ReductionPlan p;
  p.kind = r.kind;
  auto identify = [&](Vertex x, Vertex y, Vertex z) {
    p.identification = Identification{x, y, z};
    p.straighten = {Edge::of(x, z), Edge::of(y, z)};
  };
  auto l11_plan = [&](Vertex pp, Vertex q, Vertex s, Vertex t, Vertex a, Vertex c) {
    p.deleted = {pp, q, s, t};
    identify(c, a, pp);
    p.colorer = TreeKind::Claw;
    p.roles = {q, pp, s, t};
    p.residual_multiples = {5, 3, 3, 3};
  };
  switch (r.kind) {
    case ConfigKind::L10_Claw4:
      p.deleted = w;
      p.colorer = TreeKind::Claw;
      p.roles = w;
      p.residual_multiples = {5, 3, 3, 3};
      break;
    case ConfigKind::L11_Adjacent4s: l11_plan(w[0], w[1], w[2], w[3], w[4], w[5]); break;
    case ConfigKind::L12_TrianglePoorSmallU: {
      const Vertex u = w[0], v = w[1], x = w[2];
      const int du = g.degree(u);
      require(du >= 3, ErrorKind::UnsupportedKind, "u has degree below 3; the degree property covers it");
      p.colorer = TreeKind::Claw;
      p.residual_multiples = {5, 3, 3, 3};
      if (du == 3) {
        p.deleted = {u, v, w[3]};
        p.roles = {v, u, w[3], -1};
        if (w.size() == 5) {
          p.deleted.push_back(w[4]);
          p.roles[3] = w[4];
        }
      } else if (w.size() == 4) {
        const auto& rot = g.rotation(u);
        const Vertex opposite = rot[(static_cast<std::size_t>(g.rotation_index(u, x)) + 2) % 4];
        require(opposite != v, ErrorKind::PreconditionViolated, "triangle is not a face at u");
        p.deleted = {u, v, w[3]};
        identify(opposite, x, u);
        p.roles = {v, u, w[3], -1};
      } else {
        // Adjacent internal 4-vertices: the same reduction as the adjacent-4s lemma.
        const auto abc = after(g, u, v);
        const auto def = after(g, v, u);
        const bool ok = (def[0] == w[3] && def[1] == w[4]) || (def[1] == w[3] && def[2] == w[4]) ||
                        (def[0] == w[4] && def[1] == w[3]) || (def[1] == w[4] && def[2] == w[3]);
        require(ok, ErrorKind::PreconditionViolated, "isolated neighbours of v are not consecutive");
        l11_plan(u, v, w[3], w[4], abc[0], abc[2]);
      }
      break;
    }
    case ConfigKind::L13_FiveStar:
      p.deleted = w;
      p.colorer = TreeKind::Star5;
      p.roles = w;
      p.residual_multiples = {7, 3, 3, 3, 3, 3};
      break;
    case ConfigKind::L14_Broom:
      p.deleted = {w[0], w[1], w[2], w[4], w[5], w[6]};
      p.colorer = TreeKind::Broom;
      p.roles = p.deleted;
      p.residual_multiples = {3, 5, 5, 3, 3, 3};
      break;
    case ConfigKind::L15_DoubleClaw:
      p.deleted = {w[3], w[4], w[0], w[1], w[5], w[7]};
      identify(w[2], w[6], w[1]);
      p.colorer = TreeKind::DoubleClaw;
      p.roles = {w[0], w[1], w[3], w[4], w[5], w[7]};
      p.residual_multiples = {5, 5, 3, 3, 3, 3};
      break;
    default: fail(ErrorKind::UnsupportedKind, std::string(to_string(r.kind)));
  }
  return p;
}

namespace {

Cover restrict_cover(const Cover& c, const std::vector<Vertex>& keep) {
  std::vector<int> index(static_cast<std::size_t>(c.vertex_count()), -1);
  std::vector<int> sizes;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    index[keep[i]] = static_cast<int>(i);
    sizes.push_back(c.size(keep[i]));
  }
  Cover out(sizes);
  for (const auto& [e, pairs] : c.matchings())
    if (index[e.u] >= 0 && index[e.v] >= 0) out.set_matching(index[e.u], index[e.v], pairs);
  return out;
}

MultiColoring solve_or_throw(const Graph& h, const Cover& c, int m, const MultiColoring& fixed,
                             const ReductionOptions& options) {
  require(h.vertex_count() <= options.max_solver_vertices, ErrorKind::SolverTooLarge,
          "subproblem has " + std::to_string(h.vertex_count()) + " vertices");
  FoldSpec spec{m, c.sizes(), std::vector<int>(static_cast<std::size_t>(h.vertex_count()), 2 * m)};
  SolveOptions so;
  so.budget_sec = options.budget_sec;
  auto res = exhaustive_solve(h, c, spec, fixed, so);
  require(res.status != SolveStatus::Timeout, ErrorKind::SolverTooLarge, "subproblem exceeded the time budget");
  require(res.status == SolveStatus::Sat, ErrorKind::SubproblemUnsat,
          "the smaller graph admits no extension of the boundary colouring");
  return res.coloring;
}

}  // namespace

ReductionOutcome execute_reduction(const ReductionPlan& plan, const PlaneGraph& g, const Cover& c,
                                   const MultiColoring& boundary_phi, int m, const ReductionOptions& options) {
  const Graph& G = g.graph();
  const int n = g.vertex_count();
  FoldSpec whole{m, c.sizes(), std::vector<int>(static_cast<std::size_t>(n), 2 * m)};
  {
    const auto& d = g.outer_boundary();
    auto bad = verify_coloring(G, c, whole, boundary_phi, d);
    require(bad.empty(), ErrorKind::InvalidPartialColoring,
            bad.empty() ? std::string() : "boundary colouring: " + bad.front().detail);
  }
  std::vector<char> in_z(static_cast<std::size_t>(n), 0);
  for (Vertex v : plan.deleted) in_z[v] = 1;

  Cover c1 = c;
  std::vector<std::vector<int>> perm;
  MultiColoring bphi = boundary_phi;
  if (!plan.straighten.empty()) {
    StraightenResult st = straighten_tree(c, plan.straighten);
    c1 = std::move(st.cover);
    perm = std::move(st.permutation);
    bphi = permute_coloring(boundary_phi, perm);
  }

  ReductionOutcome out;
  MultiColoring outside(n);
  if (plan.identification) {
    const auto& idn = *plan.identification;
    IdentifyResult id = identify_vertices(g, idn.x, idn.y, idn.z, plan.deleted);
    Cover c2 = inherited_cover(G, c1, id);
    const int n2 = id.graph.vertex_count();
    MultiColoring fixed(n2);
    for (Vertex v : g.outer_boundary()) fixed.assign(id.old_to_new[v], bphi.colors(v));
    out.subproblem_vertices = n2;
    MultiColoring sol = solve_or_throw(id.graph.graph(), c2, m, fixed, options);
    for (Vertex v = 0; v < n; ++v)
      if (!in_z[v]) outside.assign(v, sol.colors(id.old_to_new[v]));
  } else {
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < n; ++v)
      if (!in_z[v]) keep.push_back(v);
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
    const Graph h = G.induced(keep);
    MultiColoring fixed(static_cast<int>(keep.size()));
    for (Vertex v : g.outer_boundary()) fixed.assign(index[v], bphi.colors(v));
    out.subproblem_vertices = h.vertex_count();
    MultiColoring sol = solve_or_throw(h, restrict_cover(c1, keep), m, fixed, options);
    for (std::size_t i = 0; i < keep.size(); ++i) outside.assign(keep[i], sol.colors(static_cast<Vertex>(i)));
  }

  const ResidualCover res = residual(G, c1, outside, plan.deleted);
  const TreeKind kind = plan.colorer;
  const Graph tree = shape_graph(kind);
  const auto sizes = shape_sizes(kind, m);
  std::vector<std::vector<int>> trimmed(plan.roles.size());
  for (std::size_t r = 0; r < plan.roles.size(); ++r) {
    const Vertex host = plan.roles[r];
    const int want = plan.residual_multiples[r] * m;
    require(want == sizes[r], ErrorKind::InternalAssertion, "plan sizes disagree with the colorer");
    if (host < 0) {
      out.residual_sizes.push_back(want);
      continue;
    }
    const auto& l = res.list_of(host);
    out.residual_sizes.push_back(static_cast<int>(l.size()));
    require(static_cast<int>(l.size()) >= want, ErrorKind::LemmaViolated,
            "|L'(" + std::to_string(host) + ")| = " + std::to_string(l.size()) + " below the promised " +
                std::to_string(want));
    trimmed[r].assign(l.begin(), l.begin() + want);
  }

  std::vector<int> role_of(static_cast<std::size_t>(n), -1);
  for (std::size_t r = 0; r < plan.roles.size(); ++r)
    if (plan.roles[r] >= 0) role_of[plan.roles[r]] = static_cast<int>(r);
  for (const Edge& e : G.edges()) {
    if (!in_z[e.u] || !in_z[e.v]) continue;
    require(role_of[e.u] >= 0 && role_of[e.v] >= 0 && tree.has_edge(role_of[e.u], role_of[e.v]),
            ErrorKind::PreconditionViolated,
            "G[Z] has the edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " outside the lemma tree");
  }

  Cover local(sizes);
  for (const Edge& e : tree.edges()) {
    const Vertex a = plan.roles[e.u], b = plan.roles[e.v];
    std::vector<IndexPair> pairs;
    if (a < 0 || b < 0) {
      for (int k = 0; k < std::min(sizes[e.u], sizes[e.v]); ++k) pairs.emplace_back(k, k);
    } else {
      require(G.has_edge(a, b), ErrorKind::PreconditionViolated,
              "lemma tree edge " + std::to_string(a) + "-" + std::to_string(b) + " missing from G[Z]");
      const auto& ta = trimmed[e.u];
      const auto& tb = trimmed[e.v];
      for (auto [i, j] : c1.matching(a, b)) {
        auto ia = std::lower_bound(ta.begin(), ta.end(), i);
        auto jb = std::lower_bound(tb.begin(), tb.end(), j);
        if (ia != ta.end() && *ia == i && jb != tb.end() && *jb == j)
          pairs.emplace_back(static_cast<int>(ia - ta.begin()), static_cast<int>(jb - tb.begin()));
      }
    }
    local.set_matching(e.u, e.v, std::move(pairs));
  }
  TreeColoring tc = dispatch_tree_colorer(kind, local, FoldSpec{m, sizes, shape_folds(kind, m)});
  out.trace = tc.trace;

  MultiColoring phi = outside;
  for (std::size_t r = 0; r < plan.roles.size(); ++r) {
    if (plan.roles[r] < 0) continue;
    std::vector<int> idx;
    for (int k : tc.coloring.colors(static_cast<Vertex>(r))) idx.push_back(trimmed[r][k]);
    phi.assign(plan.roles[r], std::move(idx));
  }
  auto bad = verify_coloring(G, c1, whole, phi);
  require(bad.empty(), ErrorKind::InternalAssertion,
          bad.empty() ? std::string() : "union colouring fails: " + bad.front().detail);
  if (!perm.empty()) phi = permute_coloring(phi, perm, true);
  bad = verify_coloring(G, c, whole, phi);
  require(bad.empty(), ErrorKind::InternalAssertion,
          bad.empty() ? std::string() : "colouring fails after undoing the permutation: " + bad.front().detail);
  out.coloring = std::move(phi);
  return out;
}

}  // namespace dpcolor
