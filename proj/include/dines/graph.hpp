#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dines/graph_ops.hpp"

namespace dines {

struct SignedEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  std::int8_t sign = 1;  // +1 or -1

  bool positive() const { return sign > 0; }
  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

/// Neighbor type of node u: direction of the edge relative to u, and its sign.
enum class Direction : std::uint8_t { OutPositive = 0, OutNegative = 1, InPositive = 2, InNegative = 3 };

/// Message concatenation order used throughout the encoder.
inline constexpr std::array<Direction, 4> kDirections{
    Direction::OutPositive, Direction::OutNegative, Direction::InPositive, Direction::InNegative};

std::string_view direction_name(Direction d);

/// Immutable signed directed graph over nodes 0..n-1, with the four
/// per-node neighbor lists N_u^{out+}, N_u^{out-}, N_u^{in+}, N_u^{in-}.
class SignedDigraph {
 public:
  SignedDigraph() = default;

  /// Validates ids < n, no self-loops and no repeated (src, dst) pairs.
  static SignedDigraph from_edges(std::size_t n, std::vector<SignedEdge> edges);

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t positive_count() const { return positive_; }
  std::size_t negative_count() const { return edges_.size() - positive_; }
  /// Fraction of positive edges (0 for an empty graph).
  double positive_ratio() const;

  std::span<const SignedEdge> edges() const { return edges_; }
  std::span<const std::uint32_t> neighbors(std::uint32_t u, Direction d) const;
  std::size_t degree(std::uint32_t u, Direction d) const;
  const AdjacencyPtr& adjacency(Direction d) const {
    return adjacency_[static_cast<std::size_t>(d)];
  }

  friend bool operator==(const SignedDigraph& a, const SignedDigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t positive_ = 0;
  std::vector<SignedEdge> edges_;
  std::array<AdjacencyPtr, 4> adjacency_{};
};

/// Keeps the edges whose endpoints both lie below the smallest node-id
/// threshold t that retains at least `edge_limit` edges. The result has
/// t nodes (ids are already the prefix 0..t-1).
SignedDigraph subgraph_prefix(const SignedDigraph& g, std::size_t edge_limit);

}  // namespace dines
