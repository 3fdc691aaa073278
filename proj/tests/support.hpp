#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dpcolor/coloring.hpp"
#include "dpcolor/cover.hpp"
#include "dpcolor/io.hpp"
#include "dpcolor/plane_graph.hpp"
#include "dpcolor/tree_colorers.hpp"

namespace testing {

inline std::filesystem::path corpus_path(const std::string& name) {
  return std::filesystem::path(DPCOLOR_CORPUS_DIR) / name;
}

inline dpcolor::PlaneGraph load_graph(const std::string& name) {
  return dpcolor::graph_from_json(dpcolor::read_text_file(corpus_path(name)));
}

// Cycle 0..n-1 drawn with the bounded face on the increasing side.
inline std::vector<std::vector<int>> cycle_rotation(int n) {
  std::vector<std::vector<int>> rot(n);
  for (int i = 0; i < n; ++i) rot[i] = {(i + 1) % n, (i + n - 1) % n};
  return rot;
}

inline dpcolor::PlaneGraph cycle_graph(int n) {
  std::vector<int> outer(n);
  for (int i = 0; i < n; ++i) outer[i] = i;
  return dpcolor::build_embedding(cycle_rotation(n), outer);
}

// Every edge carries a random perfect matching between the first
// min(f(u), f(v)) colours of each side.
inline dpcolor::Cover random_cover(const dpcolor::Graph& g, std::vector<int> sizes, std::mt19937_64& rng) {
  dpcolor::Cover c(sizes);
  for (const auto& e : g.edges()) {
    std::vector<int> a(sizes[e.u]), b(sizes[e.v]);
    for (int i = 0; i < sizes[e.u]; ++i) a[i] = i;
    for (int i = 0; i < sizes[e.v]; ++i) b[i] = i;
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    std::vector<dpcolor::IndexPair> pairs;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) pairs.emplace_back(a[i], b[i]);
    c.set_matching(e.u, e.v, pairs);
  }
  return c;
}

inline dpcolor::Cover random_cover(const dpcolor::Graph& g, int size, std::mt19937_64& rng) {
  return random_cover(g, std::vector<int>(g.vertex_count(), size), rng);
}

// Colours G[D] on its own with the exact solver and lifts the result back to
// g's vertex ids; nullopt when G[D] has no colouring.
inline std::optional<dpcolor::MultiColoring> boundary_coloring(const dpcolor::PlaneGraph& g, const dpcolor::Cover& c,
                                                               int m) {
  std::vector<int> d = g.outer_boundary();
  std::sort(d.begin(), d.end());
  const dpcolor::Graph h = g.graph().induced(d);
  std::vector<int> sizes;
  for (int v : d) sizes.push_back(c.size(v));
  dpcolor::Cover hc(sizes);
  for (const auto& e : h.edges()) hc.set_matching(e.u, e.v, c.matching(d[e.u], d[e.v]));
  dpcolor::FoldSpec spec{m, sizes, std::vector<int>(d.size(), 2 * m)};
  auto res = dpcolor::exhaustive_solve(h, hc, spec, dpcolor::MultiColoring(h.vertex_count()));
  if (res.status != dpcolor::SolveStatus::Sat) return std::nullopt;
  dpcolor::MultiColoring phi(g.vertex_count());
  for (std::size_t i = 0; i < d.size(); ++i) phi.assign(d[i], res.coloring.colors(static_cast<int>(i)));
  return phi;
}

// Lists with the sizes and nesting the lemma for `kind` assumes, drawn from a
// universe twice the size of the largest list.
inline std::vector<dpcolor::ColorList> random_nested_lists(dpcolor::TreeKind kind, int m, std::mt19937_64& rng) {
  using dpcolor::TreeKind;
  const auto sizes = dpcolor::shape_sizes(kind, m);
  const int outer = kind == TreeKind::Broom ? 2 : 0;
  const int twin = kind == TreeKind::Claw || kind == TreeKind::Star5 ? -1 : 1;  // role whose list equals the outer one
  auto draw = [&](const std::vector<int>& pool, int k) {
    auto p = pool;
    std::shuffle(p.begin(), p.end(), rng);
    p.resize(k);
    std::sort(p.begin(), p.end());
    return p;
  };
  std::vector<int> universe(2 * sizes[outer]);
  for (std::size_t i = 0; i < universe.size(); ++i) universe[i] = static_cast<int>(i);
  std::vector<dpcolor::ColorList> lists(sizes.size());
  lists[outer] = draw(universe, sizes[outer]);
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    if (static_cast<int>(r) == outer) continue;
    lists[r] = static_cast<int>(r) == twin ? lists[outer] : draw(lists[outer], sizes[r]);
  }
  return lists;
}

// Plain search over every fold-sized subset per role, independent of the
// library's solver.
inline bool naive_list_colorable(dpcolor::TreeKind kind, const std::vector<dpcolor::ColorList>& lists, int m) {
  const auto folds = dpcolor::shape_folds(kind, m);
  const auto tree = dpcolor::shape_graph(kind);
  const int n = static_cast<int>(lists.size());
  std::vector<std::vector<dpcolor::ColorList>> options(n);
  for (int r = 0; r < n; ++r) {
    const int k = folds[r];
    const int s = static_cast<int>(lists[r].size());
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      dpcolor::ColorList pick;
      for (int i : idx) pick.push_back(lists[r][i]);
      options[r].push_back(pick);
      int i = k - 1;
      while (i >= 0 && idx[i] == s - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  std::vector<const dpcolor::ColorList*> chosen(n, nullptr);
  auto disjoint = [](const dpcolor::ColorList& a, const dpcolor::ColorList& b) {
    for (int x : a)
      if (std::binary_search(b.begin(), b.end(), x)) return false;
    return true;
  };
  auto rec = [&](auto&& self, int r) -> bool {
    if (r == n) return true;
    for (const auto& opt : options[r]) {
      bool ok = true;
      for (int q : tree.neighbors(r))
        if (q < r && !disjoint(opt, *chosen[q])) ok = false;
      if (!ok) continue;
      chosen[r] = &opt;
      if (self(self, r + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace testing
