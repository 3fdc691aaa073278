#include "dpcolor/tree_colorers.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "dpcolor/coloring.hpp"
#include "dpcolor/error.hpp"

namespace dpcolor {

namespace {

ColorList normalized(ColorList a) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

ColorList operator-(const ColorList& a, const ColorList& b) {
  ColorList out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ColorList operator&(const ColorList& a, const ColorList& b) {
  ColorList out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ColorList operator|(const ColorList& a, const ColorList& b) {
  ColorList out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset(const ColorList& a, const ColorList& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

int size(const ColorList& a) { return static_cast<int>(a.size()); }

// Lexicographically smallest k-subset. The lemmas guarantee the pool is big
// enough; a short pool means the construction (or its integer rounding) broke.
ColorList take(const ColorList& pool, int k, const char* what) {
  require(k >= 0 && size(pool) >= k, ErrorKind::InternalAssertion,
          std::string("need ") + std::to_string(k) + " colours for " + what + ", only " +
              std::to_string(pool.size()) + " available");
  return ColorList(pool.begin(), pool.begin() + k);
}

void expect_sizes(TreeKind kind, const std::vector<ColorList>& lists, int m) {
  require(m >= 1, ErrorKind::PreconditionViolated, "m must be positive");
  const auto want = shape_sizes(kind, m);
  require(lists.size() == want.size(), ErrorKind::PreconditionViolated,
          std::string(to_string(kind)) + " needs " + std::to_string(want.size()) + " lists");
  const auto& names = role_names(kind);
  for (std::size_t r = 0; r < want.size(); ++r) {
    require(normalized(lists[r]) == lists[r], ErrorKind::PreconditionViolated,
            "list of " + names[r] + " must be sorted without repeats");
    require(size(lists[r]) == want[r], ErrorKind::PreconditionViolated,
            "|L(" + names[r] + ")| = " + std::to_string(lists[r].size()) + ", lemma needs " + std::to_string(want[r]));
  }
}

void expect_nested(const std::vector<ColorList>& lists, std::initializer_list<int> inner, int outer,
                   TreeKind kind) {
  const auto& names = role_names(kind);
  for (int r : inner)
    require(subset(lists[r], lists[outer]), ErrorKind::PreconditionViolated,
            "L(" + names[r] + ") is not contained in L(" + names[outer] + ")");
}

ListColoring solve_lists_exhaustively(TreeKind kind, const std::vector<ColorList>& lists, int m) {
  const Graph g = shape_graph(kind);
  const Cover c = cover_from_lists(g, lists);
  FoldSpec spec{m, shape_sizes(kind, m), shape_folds(kind, m)};
  auto res = exhaustive_solve(g, c, spec, MultiColoring(g.vertex_count()));
  require(res.status == SolveStatus::Sat, ErrorKind::LemmaViolated,
          std::string(to_string(kind)) + " instance has no colouring");
  ListColoring out;
  for (Vertex r = 0; r < g.vertex_count(); ++r) {
    ColorList s;
    for (int i : res.coloring.colors(r)) s.push_back(lists[r][i]);
    out.phi.push_back(s);
  }
  return out;
}

}  // namespace

std::string_view to_string(TreeKind kind) {
  switch (kind) {
    case TreeKind::Claw: return "claw";
    case TreeKind::DoubleClaw: return "double_claw";
    case TreeKind::DoubleClawG: return "double_claw_g";
    case TreeKind::Star5: return "star5";
    case TreeKind::Broom: return "broom";
  }
  return "unknown";
}

TreeKind tree_kind_from_string(std::string_view name) {
  for (TreeKind k : {TreeKind::Claw, TreeKind::DoubleClaw, TreeKind::DoubleClawG, TreeKind::Star5, TreeKind::Broom})
    if (to_string(k) == name) return k;
  fail(ErrorKind::Parse, "unknown tree shape '" + std::string(name) + "'");
}

const std::vector<std::string>& role_names(TreeKind kind) {
  static const std::vector<std::string> claw{"u", "v1", "v2", "v3"};
  static const std::vector<std::string> dclaw{"u", "v", "u1", "u2", "v1", "v2"};
  static const std::vector<std::string> star{"v", "v1", "v2", "v3", "v4", "v5"};
  static const std::vector<std::string> broom{"u", "w", "v", "v1", "v2", "v3"};
  switch (kind) {
    case TreeKind::Claw: return claw;
    case TreeKind::DoubleClaw:
    case TreeKind::DoubleClawG: return dclaw;
    case TreeKind::Star5: return star;
    case TreeKind::Broom: return broom;
  }
  return claw;
}

Graph shape_graph(TreeKind kind) {
  std::vector<Edge> e;
  switch (kind) {
    case TreeKind::Claw: e = {{0, 1}, {0, 2}, {0, 3}}; break;
    case TreeKind::DoubleClaw:
    case TreeKind::DoubleClawG: e = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}}; break;
    case TreeKind::Star5: e = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}; break;
    case TreeKind::Broom: e = {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5}}; break;
  }
  return Graph(static_cast<int>(role_names(kind).size()), e);
}

std::vector<int> shape_sizes(TreeKind kind, int m) {
  std::vector<int> k;
  switch (kind) {
    case TreeKind::Claw: k = {5, 3, 3, 3}; break;
    case TreeKind::DoubleClaw: k = {5, 5, 3, 3, 3, 3}; break;
    case TreeKind::DoubleClawG: k = {4, 4, 2, 2, 2, 2}; break;
    case TreeKind::Star5: k = {7, 3, 3, 3, 3, 3}; break;
    case TreeKind::Broom: k = {3, 5, 5, 3, 3, 3}; break;
  }
  for (int& x : k) x *= m;
  return k;
}

std::vector<int> shape_folds(TreeKind kind, int m) {
  std::vector<int> g(role_names(kind).size(), 2 * m);
  if (kind == TreeKind::DoubleClawG)
    for (std::size_t r = 2; r < g.size(); ++r) g[r] = m;
  return g;
}

ListColoring color_claw(const std::vector<ColorList>& L, int m) {
  constexpr TreeKind kind = TreeKind::Claw;
  expect_sizes(kind, L, m);
  expect_nested(L, {1, 2, 3}, 0, kind);
  const auto& Lu = L[0];
  ListColoring out;
  out.trace.case_taken = "claw";
  out.trace.quantities.emplace_back("|L(v1)&L(v2)|", size(L[1] & L[2]));

  const ColorList A = take(L[1] & L[2], m, "A");
  const ColorList B = take(Lu - (L[3] | A), m, "B");
  const ColorList A1 = take(L[1] - (A | B), m, "A'1");
  const ColorList A2 = take(L[2] - (A | B), m, "A'2");
  const ColorList Bp = take(Lu - (A | A1 | A2 | B), m, "B'");
  out.phi = {B | Bp, A | A1, A | A2, take(L[3] - Bp, 2 * m, "phi(v3)")};
  return out;
}

ListColoring color_double_claw_g(const std::vector<ColorList>& L, int m) {
  constexpr TreeKind kind = TreeKind::DoubleClawG;
  expect_sizes(kind, L, m);
  require(L[0] == L[1], ErrorKind::PreconditionViolated, "centre lists must be equal");
  expect_nested(L, {2, 3, 4, 5}, 0, kind);
  const auto &Lu = L[0], &Lv = L[1], &Lu1 = L[2], &Lu2 = L[3], &Lv1 = L[4], &Lv2 = L[5];
  ListColoring out;
  out.phi.resize(6);
  const ColorList I = Lu1 & Lu2;
  out.trace.quantities.emplace_back("|L(u1)&L(u2)|", size(I));

  if (size(I) >= m) {
    out.trace.case_taken = "case1";
    const ColorList A = take(I, m, "A");
    const ColorList Lu_1 = Lu - A;
    const ColorList B = take(Lu_1 & Lv1, m, "B");
    const ColorList Lv_2 = Lv - B;
    const ColorList Lu_2 = Lu_1 - B;
    // Colours of L(v2) inside B are never used at v, so v2 may trade them for
    // colours of L''(v) it lacks; this gives L*(v2) inside L''(v).
    const ColorList moved = Lv2 & B;
    const ColorList fresh = take(Lv_2 - Lv2, size(moved), "replacement colours for v2");
    std::map<int, int> back;
    for (std::size_t k = 0; k < moved.size(); ++k) back[fresh[k]] = moved[k];
    const ColorList Lstar = (Lv2 - B) | fresh;
    const ColorList C = take(Lu_2 & Lstar, m, "C");
    ColorList phi_v2;
    for (int c : C) phi_v2.push_back(back.count(c) ? back[c] : c);
    out.phi[0] = B | C;
    out.phi[1] = Lv_2 - C;
    out.phi[2] = out.phi[3] = A;
    out.phi[4] = B;
    out.phi[5] = normalized(phi_v2);
    out.trace.quantities.emplace_back("|L''(v)-C|", size(out.phi[1]));
  } else {
    out.trace.case_taken = "case2";
    const ColorList A = take((Lu1 | Lu2) - Lv1, m, "A");
    const ColorList B = take(Lv2 - A, m, "B");
    const ColorList A1 = take(Lu1 - (B | A), m - size(A & Lu1), "A1");
    const ColorList A2 = take(Lu2 - (B | A), m - size(A & Lu2), "A2");
    out.phi[2] = (A & Lu1) | A1;
    out.phi[3] = (A & Lu2) | A2;
    out.phi[5] = B;
    out.phi[4] = take(Lv1 - (A1 | A2), m, "phi(v1)");
    const ColorList must = out.phi[4] | out.phi[5];
    const ColorList avail = Lu - (out.phi[2] | out.phi[3]);
    require(subset(must, avail), ErrorKind::InternalAssertion, "phi(v1) and phi(v2) must be free at u");
    out.phi[0] = must | take(avail - must, 2 * m - size(must), "phi(u)");
    out.phi[1] = Lv - out.phi[0];
  }
  return out;
}

ListColoring color_double_claw_uniform(const std::vector<ColorList>& L, int m) {
  constexpr TreeKind kind = TreeKind::DoubleClaw;
  expect_sizes(kind, L, m);
  require(L[0] == L[1], ErrorKind::PreconditionViolated, "centre lists must be equal");
  expect_nested(L, {2, 3, 4, 5}, 0, kind);
  const ColorList A = take(L[2] & L[3], m, "A");
  const ColorList B = take(L[4] & L[5], m, "B");
  const ColorList Lu = L[0] - A;
  const ColorList Lv = L[1] - B;
  // The reduced centre lists differ; rename v-side colours so that they agree.
  const ColorList from = Lv - Lu;
  const ColorList to = Lu - Lv;
  require(from.size() == to.size(), ErrorKind::InternalAssertion, "reduced centre lists differ in size");
  std::map<int, int> pi, pi_inv;
  for (std::size_t k = 0; k < from.size(); ++k) {
    pi[from[k]] = to[k];
    pi_inv[to[k]] = from[k];
  }
  auto rename = [](const ColorList& s, const std::map<int, int>& map) {
    ColorList out;
    for (int c : s) {
      auto it = map.find(c);
      out.push_back(it == map.end() ? c : it->second);
    }
    return normalized(out);
  };
  std::vector<ColorList> reduced = {Lu, rename(Lv, pi), L[2] - A, L[3] - A, rename(L[4] - B, pi),
                                    rename(L[5] - B, pi)};
  ListColoring inner = color_double_claw_g(reduced, m);
  ListColoring out;
  out.trace.case_taken = "reduced-" + inner.trace.case_taken;
  out.trace.quantities = {{"f'(u)", size(reduced[0])}, {"f'(v)", size(reduced[1])}, {"f'(u1)", size(reduced[2])},
                          {"f'(u2)", size(reduced[3])}, {"f'(v1)", size(reduced[4])}, {"f'(v2)", size(reduced[5])}};
  out.phi = {inner.phi[0], rename(inner.phi[1], pi_inv), A | inner.phi[2], A | inner.phi[3],
             B | rename(inner.phi[4], pi_inv), B | rename(inner.phi[5], pi_inv)};
  return out;
}

ListColoring color_star5(const std::vector<ColorList>& L, int m) {
  constexpr TreeKind kind = TreeKind::Star5;
  expect_sizes(kind, L, m);
  expect_nested(L, {1, 2, 3, 4, 5}, 0, kind);
  const int t = (4 * m + 4) / 5;
  int hi = -1, hj = -1;
  for (int i = 1; i <= 5 && hi < 0; ++i)
    for (int j = i + 1; j <= 5; ++j)
      if (size(L[i] & L[j]) >= t) {
        hi = i;
        hj = j;
        break;
      }
  require(hi > 0, ErrorKind::InternalAssertion,
          "no two leaf lists share " + std::to_string(t) + " colours; the counting bound is violated");
  std::vector<int> order{hi, hj};
  for (int r = 1; r <= 5; ++r)
    if (r != hi && r != hj) order.push_back(r);
  const ColorList& Lv = L[0];
  const ColorList &P1 = L[order[0]], &P2 = L[order[1]];
  const ColorList* Q[3] = {&L[order[2]], &L[order[3]], &L[order[4]]};

  ListColoring out;
  out.phi.resize(6);
  out.trace.quantities.emplace_back("heavy_pair", hi * 10 + hj);
  out.trace.quantities.emplace_back("|L(vi)&L(vj)|", size(P1 & P2));
  ColorList all3 = *Q[0] & *Q[1] & *Q[2];
  ColorList exactly2;
  for (int c : Lv) {
    int k = 0;
    for (auto* q : Q) k += std::binary_search(q->begin(), q->end(), c) ? 1 : 0;
    if (k == 2) exactly2.push_back(c);
  }
  const int a3 = size(all3), a2 = size(exactly2);
  out.trace.quantities.emplace_back("a3", a3);
  out.trace.quantities.emplace_back("a2", a2);

  try {
    ColorList phi_v;
    ColorList phi_q[3];
    if (a3 >= t) {
      out.trace.case_taken = "case1";
      const ColorList A = take(all3, t, "A");
      const ColorList B = take(Lv - (P1 | P2 | A), m, "B");
      ColorList used = A | B;
      for (int k = 0; k < 3; ++k) {
        const ColorList Ak = take(*Q[k] - (A | B), 2 * m - t, "A_i");
        phi_q[k] = A | Ak;
        used = used | Ak;
      }
      phi_v = B | take(Lv - used, m, "B'");
    } else {
      out.trace.case_taken = "case2";
      const ColorList& A = all3;
      const ColorList B = take(Lv - (A | P1 | P2), m, "B");
      const ColorList pool = exactly2 - B;
      const ColorList Ap = take(pool, std::min(2 * (m - a3), size(pool)), "A'");
      out.trace.quantities.emplace_back("|A'|", size(Ap));
      ColorList used;
      for (int k = 0; k < 3; ++k) {
        phi_q[k] = A | (Ap & *Q[k]);
        phi_q[k] = phi_q[k] | take(*Q[k] - (phi_q[k] | B), 2 * m - size(phi_q[k]), "A'_i");
        used = used | phi_q[k];
      }
      out.trace.quantities.emplace_back("|U|", size(used));
      phi_v = B | take(Lv - (used | B), m, "B'");
    }
    out.phi[0] = phi_v;
    out.phi[order[0]] = take(P1 - phi_v, 2 * m, "phi(v1)");
    out.phi[order[1]] = take(P2 - phi_v, 2 * m, "phi(v2)");
    for (int k = 0; k < 3; ++k) out.phi[order[2 + k]] = phi_q[k];
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InternalAssertion) throw;
    ListColoring fb = solve_lists_exhaustively(kind, L, m);
    fb.trace = out.trace;
    fb.trace.fallback_used = true;
    fb.trace.case_taken += "-fallback";
    return fb;
  }
  return out;
}

ListColoring color_broom(const std::vector<ColorList>& L, int m) {
  constexpr TreeKind kind = TreeKind::Broom;
  expect_sizes(kind, L, m);
  require(L[1] == L[2], ErrorKind::PreconditionViolated, "L(w) must equal L(v)");
  expect_nested(L, {0, 3, 4, 5}, 2, kind);
  const auto &Lu = L[0], &Lw = L[1], &Lv = L[2];
  ListColoring out;
  out.phi.resize(6);

  std::vector<std::pair<int, int>> by_degree;  // (number of leaf lists holding c, c)
  for (int c : Lv) {
    int d = 0;
    for (int r = 3; r <= 5; ++r) d += std::binary_search(L[r].begin(), L[r].end(), c) ? 1 : 0;
    by_degree.emplace_back(d, c);
  }
  ColorList low;
  for (auto [d, c] : by_degree)
    if (d <= 1) low.push_back(c);
  ColorList A;
  if (size(low) >= m) {
    out.trace.case_taken = "one-leaf";
    A = take(low, m, "A");
  } else {
    // Not enough colours lie in at most one leaf list; the m colours of least
    // leaf-degree still keep the total overlap with the leaves at most m.
    out.trace.case_taken = "least-degree";
    std::sort(by_degree.begin(), by_degree.end());
    for (int k = 0; k < m; ++k) A.push_back(by_degree[k].second);
    A = normalized(A);
  }
  int t_sum = 0;
  int t_i[3];
  for (int i = 0; i < 3; ++i) t_sum += t_i[i] = size(A & L[3 + i]);
  out.trace.quantities.emplace_back("sum t_i", t_sum);
  require(t_sum <= m, ErrorKind::InternalAssertion, "A overlaps the leaf lists too much");

  const int t = size(A & Lu);
  const ColorList Bp = take(Lv - (Lu | A), t, "B'");
  const ColorList D = (Lu - A) | Bp;
  ColorList phi_v = A;
  ColorList spread;
  for (int i = 0; i < 3; ++i) {
    const ColorList Ai = take(D - (L[3 + i] - A), t_i[i], "A_i");
    spread = spread | Ai;
  }
  phi_v = phi_v | spread;
  out.trace.quantities.emplace_back("s", size(spread));
  phi_v = phi_v | take(D - phi_v, 2 * m - size(phi_v), "filler for phi(v)");
  out.phi[2] = phi_v;
  for (int i = 0; i < 3; ++i) out.phi[3 + i] = take(L[3 + i] - phi_v, 2 * m, "phi(v_i)");
  const ColorList R = Lv - (D | A);
  const ColorList Bw = R | take((Lw - phi_v) - R, 2 * m - size(R), "phi(w)");
  out.phi[1] = Bw;
  out.trace.quantities.emplace_back("|L(u)-phi(w)|", size(Lu - Bw));
  out.phi[0] = take(Lu - Bw, 2 * m, "phi(u)");
  return out;
}

ListColoring color_lists(TreeKind kind, const std::vector<ColorList>& lists, int m) {
  switch (kind) {
    case TreeKind::Claw: return color_claw(lists, m);
    case TreeKind::DoubleClaw: return color_double_claw_uniform(lists, m);
    case TreeKind::DoubleClawG: return color_double_claw_g(lists, m);
    case TreeKind::Star5: return color_star5(lists, m);
    case TreeKind::Broom: return color_broom(lists, m);
  }
  fail(ErrorKind::UnsupportedKind, "unknown tree shape");
}

std::vector<std::string> check_list_coloring(TreeKind kind, const std::vector<ColorList>& lists,
                                             const std::vector<ColorList>& phi, int m) {
  std::vector<std::string> out;
  const auto& names = role_names(kind);
  const auto folds = shape_folds(kind, m);
  if (phi.size() != names.size() || lists.size() != names.size()) return {"wrong number of roles"};
  for (std::size_t r = 0; r < names.size(); ++r) {
    if (normalized(phi[r]) != phi[r]) out.push_back("phi(" + names[r] + ") is not a sorted set");
    if (size(phi[r]) != folds[r]) out.push_back("|phi(" + names[r] + ")| = " + std::to_string(phi[r].size()));
    if (!subset(normalized(phi[r]), lists[r])) out.push_back("phi(" + names[r] + ") leaves its list");
  }
  const Graph tree = shape_graph(kind);
  for (const Edge& e : tree.edges())
    if (!(normalized(phi[e.u]) & normalized(phi[e.v])).empty())
      out.push_back("phi(" + names[e.u] + ") meets phi(" + names[e.v] + ")");
  return out;
}

TreeColoring dispatch_tree_colorer(TreeKind kind, const Cover& c, const FoldSpec& spec) {
  const Graph g = shape_graph(kind);
  const auto sizes = shape_sizes(kind, spec.m);
  const auto folds = shape_folds(kind, spec.m);
  require(c.vertex_count() == g.vertex_count() && c.sizes() == sizes, ErrorKind::PreconditionViolated,
          std::string("cover sizes do not match the ") + std::string(to_string(kind)) + " lemma at m = " +
              std::to_string(spec.m));
  require(spec.g == folds, ErrorKind::PreconditionViolated, "folds do not match the lemma");
  auto bad_cover = validate_cover(g, c);
  require(bad_cover.empty(), ErrorKind::PreconditionViolated,
          bad_cover.empty() ? std::string() : "invalid cover: " + bad_cover.front().detail);

  TreeLists tl = tree_cover_to_lists(g, c);
  ListColoring lc = color_lists(kind, tl.lists, spec.m);
  auto bad = check_list_coloring(kind, tl.lists, lc.phi, spec.m);
  require(bad.empty(), ErrorKind::InternalAssertion, bad.empty() ? std::string() : "colorer output: " + bad.front());

  TreeColoring out;
  out.coloring = MultiColoring(g.vertex_count());
  for (Vertex r = 0; r < g.vertex_count(); ++r) {
    std::vector<int> idx;
    for (int id : lc.phi[r]) idx.push_back(tl.back[r].at(id));
    out.coloring.assign(r, std::move(idx));
  }
  auto violations = verify_coloring(g, c, spec, out.coloring);
  require(violations.empty(), ErrorKind::InternalAssertion,
          violations.empty() ? std::string() : "pulled-back colouring fails: " + violations.front().detail);
  out.trace = std::move(lc.trace);
  out.lists = std::move(tl.lists);
  return out;
}

}  // namespace dpcolor
