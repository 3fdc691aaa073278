#pragma once

#include <cstdint>
#include <vector>

#include "dpcolor/plane_graph.hpp"

namespace dpcolor {

struct GeneratorOptions {
  int target_vertices = 12;
  int outer_length = 0;     // 3, 6 or 7; 0 picks one per graph
  int max_ear_length = 4;   // new vertices per ear
  bool strict = false;      // also reject separating good cycles and short splitting paths
  int min_internal_degree = 0;  // chords are added afterwards until internal vertices reach it
  int attempts_per_step = 400;
  int restarts = 20;
};

// Rejection sampler: starts from a good cycle and repeatedly draws a path of
// new vertices (possibly none) across a bounded face, keeping the step only if
// the graph stays free of 4- and 5-cycles, the boundary stays chordless and,
// in strict mode, no separating good cycle or splitting 2-path to non-adjacent
// ends or splitting 3-path appears. Deterministic per seed. Throws
// PreconditionViolated for impossible parameters and GenerationStalled when
// the retry budget runs out.
PlaneGraph generate_graph(const GeneratorOptions& options, std::uint64_t seed);

// count graphs; graph i uses seed + i.
std::vector<PlaneGraph> generate_batch(const GeneratorOptions& options, std::uint64_t seed, int count);

}  // namespace dpcolor
