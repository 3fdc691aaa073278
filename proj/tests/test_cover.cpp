#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dpcolor/coloring.hpp"
#include "dpcolor/cover.hpp"
#include "dpcolor/error.hpp"
#include "dpcolor/reducible.hpp"
#include "support.hpp"

using namespace dpcolor;

namespace {

Graph triangle() { return Graph(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}}); }
Graph path3() { return Graph(3, std::vector<Edge>{{0, 1}, {1, 2}}); }
Graph claw() { return Graph(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}); }

// Plain set-based reading of the cover definition, kept apart from validate_cover.
bool set_checker(const Graph& g, const Cover& c) {
  for (const auto& [e, pairs] : c.matchings()) {
    if (!g.has_edge(e.u, e.v)) return false;
    std::set<int> left, right;
    for (auto [i, j] : pairs) {
      if (i < 0 || i >= c.size(e.u) || j < 0 || j >= c.size(e.v)) return false;
      if (!left.insert(i).second || !right.insert(j).second) return false;
    }
  }
  return true;
}

bool all_straight(const Cover& c) {
  for (const auto& [e, pairs] : c.matchings())
    for (auto [i, j] : pairs)
      if (i != j) return false;
  return true;
}

}  // namespace

TEST_CASE("validate_cover") {
  auto k3 = triangle();
  auto c = straight_cover(k3, 7);
  CHECK(validate_cover(k3, c, std::vector<int>{7, 7, 7}).empty());
  for (const auto& [e, pairs] : c.matchings()) CHECK(pairs.size() == 7u);
  const auto single = straight_cover(k3, 1);
  for (const auto& [e, pairs] : single.matchings()) CHECK(pairs.size() == 1u);

  auto broken = c;
  broken.set_matching(0, 1, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 5}});  // colour 5 of vertex 1 twice
  auto v = validate_cover(k3, broken);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == CoverViolation::Kind::NotAMatching);

  CHECK(validate_cover(k3, c, std::vector<int>{7, 7, 6}).size() == 1);

  auto path = path3();
  Cover stray(std::vector<int>{2, 2, 2});
  stray.add_pair(0, 0, 2, 0);
  CHECK(validate_cover(path, stray).size() == 1);

  std::mt19937_64 rng(1);
  auto g = testing::load_graph("g12a.json");
  for (int round = 0; round < 20; ++round) {
    auto rc = testing::random_cover(g.graph(), 7, rng);
    CHECK(validate_cover(g.graph(), rc).empty() == set_checker(g.graph(), rc));
    auto bad = rc;
    const Edge e = g.graph().edges()[round % g.edge_count()];
    auto pairs = bad.matching(e.u, e.v);
    pairs.push_back({pairs[0].first, pairs[1].second});
    bad.set_matching(e.u, e.v, pairs);
    CHECK_FALSE(validate_cover(g.graph(), bad).empty());
    CHECK_FALSE(set_checker(g.graph(), bad));
  }
}

TEST_CASE("cover of a list assignment joins equal names") {
  auto path = path3();
  std::vector<std::vector<int>> lists{{1, 2, 5}, {2, 3, 5, 9}, {9}};
  auto c = cover_from_lists(path, lists);
  CHECK(c.sizes() == std::vector<int>{3, 4, 1});
  CHECK(c.matching(0, 1) == std::vector<IndexPair>{{1, 0}, {2, 2}});
  CHECK(c.matching(1, 2) == std::vector<IndexPair>{{3, 0}});
  CHECK(validate_cover(path, c).empty());
}

TEST_CASE("straighten_tree") {
  auto path = path3();
  auto straight = straight_cover(path, 5);
  auto same = straighten_tree(straight, path.edges());
  CHECK(same.cover == straight);
  for (const auto& p : same.permutation)
    for (int i = 0; i < static_cast<int>(p.size()); ++i) CHECK(p[i] == i);

  Cover rev(std::vector<int>{5, 5, 5});
  std::vector<IndexPair> reversal;
  for (int i = 0; i < 5; ++i) reversal.push_back({i, 4 - i});
  rev.set_matching(0, 1, reversal);
  rev.set_matching(1, 2, straight.matching(1, 2));
  auto r = straighten_tree(rev, path.edges());
  CHECK(validate_cover(path, r.cover).empty());
  CHECK(all_straight(r.cover));
  // Exactly one of the two outer ends of the reversed edge is relabelled.
  const bool at_zero = r.permutation[0][0] == 4;
  const bool at_one = r.permutation[1][0] == 4;
  CHECK(at_zero != at_one);

  std::mt19937_64 rng(1);
  auto star = claw();
  auto rc = testing::random_cover(star, 7, rng);
  auto s = straighten_tree(rc, star.edges());
  CHECK(validate_cover(star, s.cover).empty());
  CHECK(all_straight(s.cover));

  // A colouring of the straightened cover maps back to a colouring of the original.
  auto spec = FoldSpec::uniform(4, 1);
  auto solved = exhaustive_solve(star, s.cover, spec, MultiColoring(4));
  REQUIRE(solved.status == SolveStatus::Sat);
  auto back = permute_coloring(solved.coloring, s.permutation, true);
  CHECK(verify_coloring(star, rc, spec, back).empty());

  auto k3 = triangle();
  try {
    straighten_tree(straight_cover(k3, 3), k3.edges());
    FAIL("cycle accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotATree);
  }
}

TEST_CASE("color_neighbors") {
  Graph edge(2, std::vector<Edge>{{0, 1}});
  auto c = straight_cover(edge, 4);
  CHECK(color_neighbors(c, {0, 2}) == std::vector<Color>{{1, 2}});
  CHECK(color_neighbors(Cover(std::vector<int>{3}), {0, 1}).empty());

  std::mt19937_64 rng(1);
  auto g = testing::load_graph("g12a.json");
  auto rc = testing::random_cover(g.graph(), 7, rng);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (int i = 0; i < 7; ++i) {
      std::vector<Color> scan;
      for (const auto& [e, pairs] : rc.matchings())
        for (auto [a, b] : pairs) {
          if (e.u == v && a == i) scan.push_back({e.v, b});
          if (e.v == v && b == i) scan.push_back({e.u, a});
        }
      std::sort(scan.begin(), scan.end());
      auto got = color_neighbors(rc, {v, i});
      std::sort(got.begin(), got.end());
      CHECK(got == scan);
    }
}

TEST_CASE("residual lists") {
  auto path = path3();
  auto c = straight_cover(path, 7);
  MultiColoring phi(3);
  phi.assign(0, {0, 1});
  phi.assign(2, {2, 3});
  auto r = residual(path, c, phi, std::vector<int>{1});
  CHECK(r.list_of(1) == std::vector<int>{4, 5, 6});
  CHECK(r.lower_bounds == std::vector<int>{3});

  auto whole = residual(path, c, MultiColoring(3), std::vector<int>{0, 1, 2});
  for (Vertex v = 0; v < 3; ++v) CHECK(whole.list_of(v) == std::vector<int>{0, 1, 2, 3, 4, 5, 6});

  // Every surviving colour avoids the colours of coloured neighbours.
  std::mt19937_64 rng(1);
  auto star = claw();
  auto rc = testing::random_cover(star, 7, rng);
  MultiColoring leaves(4);
  leaves.assign(1, {0, 1});
  leaves.assign(2, {2, 3});
  auto rr = residual(star, rc, leaves, std::vector<int>{0, 3});
  CHECK(rr.list_of(0).size() >= 3u);
  for (int i : rr.list_of(0))
    for (auto nb : color_neighbors(rc, {0, i}))
      if (leaves.is_colored(nb.owner)) {
        const auto& cs = leaves.colors(nb.owner);
        CHECK(std::find(cs.begin(), cs.end(), nb.index) == cs.end());
      }

  MultiColoring clash(3);
  clash.assign(0, {0, 1});
  clash.assign(1, {1, 2});
  try {
    residual(path, c, clash, std::vector<int>{2});
    FAIL("conflicting colouring accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidPartialColoring);
  }
}

TEST_CASE("inherited cover") {
  auto g = testing::load_graph("reductions/L11.json");
  auto reports = find_reducible(g);
  auto it = std::find_if(reports.begin(), reports.end(),
                         [](const ConfigReport& r) { return r.kind == ConfigKind::L11_Adjacent4s; });
  REQUIRE(it != reports.end());
  auto plan = explain_reduction(*it, g);
  REQUIRE(plan.identification.has_value());
  auto id = identify_vertices(g, plan.identification->x, plan.identification->y, plan.identification->z,
                              plan.deleted);

  auto straight = inherited_cover(g.graph(), straight_cover(g.graph(), 7), id);
  CHECK(all_straight(straight));
  CHECK(validate_cover(id.graph.graph(), straight).empty());

  std::mt19937_64 rng(1);
  for (int round = 0; round < 10; ++round) {
    auto rc = testing::random_cover(g.graph(), 7, rng);
    auto h = inherited_cover(g.graph(), rc, id);
    CHECK(validate_cover(id.graph.graph(), h, std::vector<int>(id.graph.vertex_count(), 7)).empty());
    for (Vertex u : id.graph.graph().neighbors(id.vstar)) {
      const Vertex old = id.new_to_old[u];
      const Vertex via = g.has_edge(id.x, old) ? id.x : id.y;
      CHECK(h.matching(id.vstar, u) == rc.matching(via, old));
    }
  }

  // 4-cycle x w y z: w is adjacent to both x and y.
  Graph c4(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  IdentifyResult fake;
  fake.graph = build_embedding({{1}, {0}}, std::vector<int>{0, 1});
  fake.old_to_new = {0, 1, 0, -1};
  fake.new_to_old = {0, 1};
  fake.vstar = 0;
  fake.x = 0;
  fake.y = 2;
  try {
    inherited_cover(c4, straight_cover(c4, 7), fake);
    FAIL("shared neighbour accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MatchingCollision);
  }
}

TEST_CASE("tree_cover_to_lists") {
  Graph edge(2, std::vector<Edge>{{0, 1}});
  auto t = tree_cover_to_lists(edge, straight_cover(edge, std::vector<int>{3, 5}));
  CHECK(t.lists[0] == std::vector<int>{0, 1, 2});
  CHECK(t.lists[1] == std::vector<int>{0, 1, 2, 3, 4});

  Graph single(1);
  auto s = tree_cover_to_lists(single, Cover(std::vector<int>{3}));
  CHECK(s.lists[0].size() == 3u);

  // Claw with random partial matchings: lists nest along each edge, and a
  // list colouring pulled back through the back-map is a cover colouring.
  std::mt19937_64 rng(1);
  auto star = claw();
  for (int round = 0; round < 20; ++round) {
    Cover c(std::vector<int>{5, 3, 3, 3});
    for (Vertex leaf = 1; leaf <= 3; ++leaf) {
      std::vector<int> a{0, 1, 2, 3, 4}, b{0, 1, 2};
      std::shuffle(a.begin(), a.end(), rng);
      std::shuffle(b.begin(), b.end(), rng);
      const int keep = static_cast<int>(rng() % 4);
      std::vector<IndexPair> pairs;
      for (int i = 0; i < keep; ++i) pairs.push_back({a[i], b[i]});
      c.set_matching(0, leaf, pairs);
    }
    auto tl = tree_cover_to_lists(star, c);
    CHECK(validate_cover(star, tl.saturated).empty());
    for (Vertex v = 0; v < 4; ++v) CHECK(static_cast<int>(tl.lists[v].size()) == c.size(v));
    for (Vertex leaf = 1; leaf <= 3; ++leaf)
      CHECK(std::includes(tl.lists[0].begin(), tl.lists[0].end(), tl.lists[leaf].begin(), tl.lists[leaf].end()));

    auto lc = color_claw(tl.lists, 1);
    MultiColoring phi(4);
    for (Vertex v = 0; v < 4; ++v) {
      std::vector<int> idx;
      for (int comp : lc.phi[v]) idx.push_back(tl.back[v].at(comp));
      phi.assign(v, idx);
    }
    CHECK(verify_coloring(star, c, FoldSpec{1, {5, 3, 3, 3}, {2, 2, 2, 2}}, phi).empty());
  }

  auto k3 = triangle();
  try {
    tree_cover_to_lists(k3, straight_cover(k3, 3));
    FAIL("cycle accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotATree);
  }
}
