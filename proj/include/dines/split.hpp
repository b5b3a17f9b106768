#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dines/graph.hpp"

namespace dines {

struct EdgeSplit {
  std::vector<SignedEdge> train;
  std::vector<SignedEdge> test;
  std::uint64_t seed = 0;
  double ratio = 0.8;
};

/// Uniformly random train/test partition of the edges of `g`;
/// |train| = round(ratio * m). Deterministic for a fixed seed.
EdgeSplit split_edges(const SignedDigraph& g, double ratio, std::uint64_t seed);

/// A split read back from disk together with the node count it refers to.
struct StoredSplit {
  std::size_t node_count = 0;
  EdgeSplit split;
};

/// Writes train.tsv, test.tsv and split.json into `dir`.
void write_split(const std::filesystem::path& dir, std::size_t node_count, const EdgeSplit& split);
StoredSplit read_split(const std::filesystem::path& dir);

}  // namespace dines
