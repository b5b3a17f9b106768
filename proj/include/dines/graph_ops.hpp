#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dines/ops.hpp"
#include "dines/tensor.hpp"

namespace dines {

/// Compressed neighbor lists: node u's neighbors are
/// targets[offsets[u] .. offsets[u+1]).
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> targets;

  std::size_t node_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::size_t degree(std::size_t u) const { return offsets[u + 1] - offsets[u]; }
};

using AdjacencyPtr = std::shared_ptr<const Adjacency>;

// Batched neighborhood reductions over the rows of an n x c matrix. Nodes with
// no neighbors receive a zero row.
Tensor neighbor_sum(const Tensor& x, const AdjacencyPtr& adj);
Tensor neighbor_mean(const Tensor& x, const AdjacencyPtr& adj);
/// Elementwise max over neighbor rows.
Tensor neighbor_max(const Tensor& x, const AdjacencyPtr& adj);

/// Attention-weighted neighbor sum. For edge (u, v) the logit is
/// LeakyReLU(self_score[u] + neighbor_score[v]); weights are the softmax of
/// the logits over u's neighbors. `self_score` and `neighbor_score` are n x 1.
/// When `weights_out` is non-null it receives one weight per entry of
/// adj->targets.
Tensor neighbor_attention(const Tensor& x, const Tensor& self_score, const Tensor& neighbor_score,
                          const AdjacencyPtr& adj, std::vector<double>* weights_out = nullptr,
                          double slope = kLeakyReluSlope);

}  // namespace dines
