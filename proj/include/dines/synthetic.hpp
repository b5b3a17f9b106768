#pragma once

#include <cstdint>

#include "dines/graph.hpp"

namespace dines {

struct SyntheticSpec {
  std::size_t nodes = 1000;
  std::size_t edges = 10000;
  double positive_ratio = 0.8;
  /// Probability of the top-left quadrant at every recursion level; the other
  /// three quadrants share the remainder equally. 0.25 gives uniform edges,
  /// larger values give heavier-tailed degrees.
  double power_law_skew = 0.57;
  std::uint64_t seed = 0;
};

/// Recursive quadrant sampling (R-MAT) of distinct directed edges without
/// self-loops; each edge is positive with probability `positive_ratio`.
/// Produces exactly `spec.edges` edges.
SignedDigraph generate_synthetic(const SyntheticSpec& spec);

}  // namespace dines
