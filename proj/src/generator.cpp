#include "dpcolor/generator.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "dpcolor/error.hpp"

namespace dpcolor {

namespace {

using Rotation = std::vector<std::vector<Vertex>>;

void insert_after(std::vector<Vertex>& rot, Vertex anchor, Vertex added) {
  for (std::size_t i = 0; i < rot.size(); ++i)
    if (rot[i] == anchor) {
      rot.insert(rot.begin() + static_cast<std::ptrdiff_t>(i) + 1, added);
      return;
    }
  fail(ErrorKind::InternalAssertion, "anchor missing from rotation");
}

bool acceptable(const PlaneGraph& g, bool strict) {
  const ClassReport cls = check_class_p45(g);
  if (cls.four_cycle || cls.five_cycle || !cls.outer_chords.empty()) return false;
  if (!strict) return true;
  for (const auto& c : enumerate_short_cycles(g, 7))
    if (c.is_separating) return false;
  const auto& d = g.outer_boundary();
  for (const auto& p : splitting_paths(g, 3)) {
    if (p.size() == 4) return false;
    const std::size_t k = d.size();
    bool d_edge = false;
    for (std::size_t i = 0; i < k; ++i)
      d_edge = d_edge || Edge::of(d[i], d[(i + 1) % k]) == Edge::of(p.front(), p.back());
    if (!d_edge) return false;
  }
  return true;
}

// One ear across a bounded face, or nullopt if the draw is rejected. With
// anchor >= 0 the ear is a chord starting at anchor.
std::optional<PlaneGraph> try_ear(const PlaneGraph& g, int max_new, bool strict, std::mt19937_64& rng,
                                  Vertex anchor = -1) {
  std::vector<int> bounded = anchor < 0 ? std::vector<int>{} : g.faces_around(anchor);
  if (anchor < 0)
    for (int f = 0; f < g.face_count(); ++f) bounded.push_back(f);
  std::erase(bounded, g.outer_face());
  if (bounded.empty()) return std::nullopt;
  const int f = bounded[std::uniform_int_distribution<std::size_t>(0, bounded.size() - 1)(rng)];
  const auto& walk = g.face(f);
  const std::size_t len = walk.size();
  std::uniform_int_distribution<std::size_t> pos(0, len - 1);
  std::size_t i = pos(rng);
  const std::size_t j = pos(rng);
  if (anchor >= 0) i = static_cast<std::size_t>(std::find(walk.begin(), walk.end(), anchor) - walk.begin());
  const int k = anchor >= 0 ? 0 : std::uniform_int_distribution<int>(0, max_new)(rng);
  const Vertex a = walk[i], b = walk[j];
  if (a == b || (k == 0 && g.has_edge(a, b))) return std::nullopt;

  Rotation rot = g.rotations();
  const Vertex first_new = g.vertex_count();
  for (int t = 0; t < k; ++t) rot.emplace_back();
  std::vector<Vertex> path{a};
  for (int t = 0; t < k; ++t) path.push_back(first_new + t);
  path.push_back(b);
  insert_after(rot[a], walk[(i + len - 1) % len], path[1]);
  insert_after(rot[b], walk[(j + len - 1) % len], path[path.size() - 2]);
  for (std::size_t t = 1; t + 1 < path.size(); ++t) rot[path[t]] = {path[t - 1], path[t + 1]};

  PlaneGraph next = build_embedding(std::move(rot), g.outer_boundary());
  if (!acceptable(next, strict)) return std::nullopt;
  return next;
}

PlaneGraph good_cycle(int len) {
  Rotation rot(static_cast<std::size_t>(len));
  std::vector<Vertex> outer;
  for (int i = 0; i < len; ++i) {
    rot[i] = {(i + 1) % len, (i + len - 1) % len};
    outer.push_back(i);
  }
  return build_embedding(std::move(rot), outer);
}

}  // namespace

PlaneGraph generate_graph(const GeneratorOptions& options, std::uint64_t seed) {
  const int ol = options.outer_length;
  require(ol == 0 || ol == 3 || ol == 6 || ol == 7, ErrorKind::PreconditionViolated,
          "outer length must be 3, 6 or 7");
  require(options.target_vertices >= (ol == 0 ? 3 : ol), ErrorKind::PreconditionViolated,
          "target below the outer cycle length");
  require(options.max_ear_length >= 0, ErrorKind::PreconditionViolated, "negative ear length");
  std::mt19937_64 rng(seed);
  for (int restart = 0; restart < options.restarts; ++restart) {
    int len = ol;
    if (len == 0) {
      std::vector<int> choices;
      for (int c : {3, 6, 7})
        if (c <= options.target_vertices) choices.push_back(c);
      len = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
    }
    PlaneGraph g = good_cycle(len);
    bool stalled = false;
    while (g.vertex_count() < options.target_vertices && !stalled) {
      const int room = std::min(options.max_ear_length, options.target_vertices - g.vertex_count());
      std::optional<PlaneGraph> next;
      for (int attempt = 0; attempt < options.attempts_per_step && !next; ++attempt)
        next = try_ear(g, room, options.strict, rng);
      if (next)
        g = std::move(*next);
      else
        stalled = true;
    }
    // Raise internal 2-vertices with chords; restart if that gets stuck.
    for (Vertex v = 0; v < g.vertex_count() && !stalled; ++v) {
      while (g.is_internal(v) && g.degree(v) < options.min_internal_degree && !stalled) {
        std::optional<PlaneGraph> next;
        for (int attempt = 0; attempt < options.attempts_per_step && !next; ++attempt)
          next = try_ear(g, 0, options.strict, rng, v);
        if (next)
          g = std::move(*next);
        else
          stalled = true;
      }
    }
    if (!stalled) return g;
  }
  fail(ErrorKind::GenerationStalled, "no graph with " + std::to_string(options.target_vertices) +
                                         " vertices after " + std::to_string(options.restarts) + " restarts");
}

std::vector<PlaneGraph> generate_batch(const GeneratorOptions& options, std::uint64_t seed, int count) {
  std::vector<PlaneGraph> out;
  for (int i = 0; i < count; ++i) out.push_back(generate_graph(options, seed + static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace dpcolor
