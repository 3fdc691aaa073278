#include "dpcolor/coloring.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>

#include "dpcolor/error.hpp"

namespace dpcolor {

namespace {

using Mask = std::uint64_t;

std::string pair_name(Vertex a, Vertex b) { return std::to_string(a) + "-" + std::to_string(b); }

bool contains(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

}  // namespace

std::vector<ColoringViolation> verify_coloring(const Graph& g, const Cover& c, const FoldSpec& spec,
                                               const MultiColoring& phi, std::span<const Vertex> domain) {
  using K = ColoringViolation::Kind;
  std::vector<ColoringViolation> out;
  const int n = g.vertex_count();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : domain) in[v] = 1;
  for (Vertex v : domain) {
    if (v >= phi.vertex_count() || !phi.is_colored(v)) {
      out.push_back({K::Uncolored, v, v, "vertex " + std::to_string(v) + " has no colours"});
      in[v] = 0;
      continue;
    }
    const auto& s = phi.colors(v);
    if (static_cast<int>(s.size()) != spec.g[v])
      out.push_back({K::WrongSize, v, v,
                     "|phi(" + std::to_string(v) + ")| = " + std::to_string(s.size()) + ", want " +
                         std::to_string(spec.g[v])});
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      out.push_back({K::Repeated, v, v, "repeated colour at " + std::to_string(v)});
    for (int i : s)
      if (i < 0 || i >= c.size(v))
        out.push_back({K::OutOfRange, v, v, "colour " + std::to_string(i) + " not in L(" + std::to_string(v) + ")"});
  }
  for (const Edge& e : g.edges()) {
    if (!in[e.u] || !in[e.v]) continue;
    const auto& a = phi.colors(e.u);
    const auto& b = phi.colors(e.v);
    for (auto [i, j] : c.matching(e.u, e.v))
      if (contains(a, i) && contains(b, j))
        out.push_back({K::Conflict, e.u, e.v,
                       "(" + std::to_string(i) + "," + std::to_string(e.u) + ")(" + std::to_string(j) + "," +
                           std::to_string(e.v) + ") in M_" + pair_name(e.u, e.v)});
  }
  return out;
}

std::vector<ColoringViolation> verify_coloring(const Graph& g, const Cover& c, const FoldSpec& spec,
                                               const MultiColoring& phi) {
  std::vector<Vertex> all(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) all[v] = v;
  return verify_coloring(g, c, spec, phi, all);
}

SolveResult exhaustive_solve(const Graph& g, const Cover& c, const FoldSpec& spec, const MultiColoring& fixed,
                             const SolveOptions& options) {
  const int n = g.vertex_count();
  require(static_cast<int>(spec.g.size()) == n && c.vertex_count() == n, ErrorKind::PreconditionViolated,
          "graph, cover and fold spec disagree on the vertex count");
  for (Vertex v = 0; v < n; ++v)
    require(c.size(v) <= 64, ErrorKind::SolverTooLarge, "list sizes above 64 are not supported");

  std::vector<Vertex> fixed_domain;
  for (Vertex v = 0; v < n && v < fixed.vertex_count(); ++v)
    if (fixed.is_colored(v)) fixed_domain.push_back(v);
  auto bad = verify_coloring(g, c, spec, fixed, fixed_domain);
  require(bad.empty(), ErrorKind::InvalidPartialColoring,
          bad.empty() ? std::string() : "fixed colouring is invalid: " + bad.front().detail);

  // conflict[v][k][i]: colours of the k-th neighbour of v matched to colour i of v.
  std::vector<std::vector<std::vector<Mask>>> conflict(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(v);
    conflict[v].assign(nb.size(), std::vector<Mask>(static_cast<std::size_t>(c.size(v)), 0));
    for (std::size_t k = 0; k < nb.size(); ++k)
      for (auto [i, j] : c.matching(v, nb[k])) conflict[v][k][i] |= Mask{1} << j;
  }

  SolveResult result;
  result.coloring = MultiColoring(n);
  std::vector<Mask> avail(static_cast<std::size_t>(n), 0);
  std::vector<Mask> chosen(static_cast<std::size_t>(n), 0);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  auto full = [](int size) { return size >= 64 ? ~Mask{0} : (Mask{1} << size) - 1; };
  for (Vertex v = 0; v < n; ++v) avail[v] = full(c.size(v));
  auto block = [&](Vertex v, Mask colors) {
    const auto& nb = g.neighbors(v);
    for (std::size_t k = 0; k < nb.size(); ++k)
      for (Mask m = colors; m; m &= m - 1) avail[nb[k]] &= ~conflict[v][k][std::countr_zero(m)];
  };
  for (Vertex v : fixed_domain) {
    Mask m = 0;
    for (int i : fixed.colors(v)) m |= Mask{1} << i;
    chosen[v] = m;
    done[v] = 1;
    block(v, m);
  }
  int remaining = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (done[v]) continue;
    ++remaining;
    if (std::popcount(avail[v]) < spec.g[v]) {
      result.status = SolveStatus::Unsat;
      return result;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  bool timed_out = false;
  auto out_of_budget = [&]() {
    if (options.node_limit >= 0 && result.nodes > options.node_limit) return true;
    if (options.budget_sec <= 0) return true;
    if ((result.nodes & 1023) != 0) return false;
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return elapsed.count() > options.budget_sec;
  };

  std::function<bool(int)> search = [&](int left) -> bool {
    if (left == 0) return true;
    ++result.nodes;
    if (out_of_budget()) {
      timed_out = true;
      return false;
    }
    Vertex best = -1;
    int best_slack = 0, best_degree = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (done[v]) continue;
      int slack = std::popcount(avail[v]) - spec.g[v];
      int deg = 0;
      for (Vertex w : g.neighbors(v)) deg += done[w] ? 0 : 1;
      if (best < 0 || slack < best_slack || (slack == best_slack && deg > best_degree)) {
        best = v;
        best_slack = slack;
        best_degree = deg;
      }
    }
    if (best_slack < 0) return false;
    const Vertex v = best;
    std::vector<int> pool;
    for (Mask m = avail[v]; m; m &= m - 1) pool.push_back(std::countr_zero(m));
    const int k = spec.g[v];
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[i] = i;
    const auto& nb = g.neighbors(v);
    std::vector<Mask> saved(nb.size());
    done[v] = 1;
    while (true) {
      Mask colors = 0;
      for (int i : pick) colors |= Mask{1} << pool[i];
      for (std::size_t t = 0; t < nb.size(); ++t) saved[t] = avail[nb[t]];
      block(v, colors);
      bool viable = true;
      for (Vertex w : nb)
        if (!done[w] && std::popcount(avail[w]) < spec.g[w]) viable = false;
      if (viable) {
        chosen[v] = colors;
        if (search(left - 1)) return true;
        if (timed_out) break;
      }
      for (std::size_t t = 0; t < nb.size(); ++t) avail[nb[t]] = saved[t];
      int i = k - 1;
      while (i >= 0 && pick[i] == static_cast<int>(pool.size()) - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    for (std::size_t t = 0; t < nb.size(); ++t) avail[nb[t]] = saved[t];
    done[v] = 0;
    return false;
  };

  if (search(remaining)) {
    result.status = SolveStatus::Sat;
    for (Vertex v = 0; v < n; ++v) {
      std::vector<int> s;
      for (Mask m = chosen[v]; m; m &= m - 1) s.push_back(std::countr_zero(m));
      result.coloring.assign(v, std::move(s));
    }
    auto check = verify_coloring(g, c, spec, result.coloring);
    require(check.empty(), ErrorKind::InternalAssertion, "solver produced an invalid colouring");
  } else {
    result.status = timed_out ? SolveStatus::Timeout : SolveStatus::Unsat;
  }
  return result;
}

MultiColoring extend_low_degree(const Graph& g, const Cover& c, const FoldSpec& spec, const MultiColoring& phi,
                                std::span<const Vertex> order) {
  MultiColoring out = phi;
  for (Vertex v : order) {
    std::vector<char> banned(static_cast<std::size_t>(c.size(v)), 0);
    int slack = c.size(v);
    for (Vertex u : g.neighbors(v)) {
      if (!out.is_colored(u)) continue;
      slack -= spec.g[u];
      const auto& pu = out.colors(u);
      for (auto [i, j] : c.matching(v, u))
        if (contains(pu, j)) banned[i] = 1;
    }
    require(slack >= spec.g[v], ErrorKind::InsufficientSlack,
            "vertex " + std::to_string(v) + " has slack " + std::to_string(slack) + " < g = " +
                std::to_string(spec.g[v]));
    std::vector<int> pick;
    for (int i = 0; i < c.size(v) && static_cast<int>(pick.size()) < spec.g[v]; ++i)
      if (!banned[i]) pick.push_back(i);
    require(static_cast<int>(pick.size()) == spec.g[v], ErrorKind::InternalAssertion,
            "greedy step ran out of colours at " + std::to_string(v));
    out.assign(v, std::move(pick));
  }
  return out;
}

std::vector<Vertex> degeneracy_order(const Graph& g, int* degeneracy) {
  const int n = g.vertex_count();
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<Vertex> peeled;
  int worst = 0;
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!removed[v] && (best < 0 || deg[v] < deg[best])) best = v;
    worst = std::max(worst, deg[best]);
    removed[best] = 1;
    peeled.push_back(best);
    for (Vertex w : g.neighbors(best))
      if (!removed[w]) --deg[w];
  }
  if (degeneracy) *degeneracy = worst;
  std::reverse(peeled.begin(), peeled.end());
  return peeled;
}

}  // namespace dpcolor
