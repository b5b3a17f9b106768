#pragma once

#include <random>
#include <span>
#include <vector>

#include "dines/encoder.hpp"
#include "dines/graph.hpp"
#include "dines/tensor.hpp"

namespace dines {

struct DecoderParams {
  Tensor pairwise;     // K x K, pairwise-correlation decoder
  Tensor concat;       // 2 d_L, concatenation decoder
  Tensor disc_weight;  // K x c_L, shared factor discriminator
  Tensor disc_bias;    // K

  std::vector<NamedTensor> named() const;
};

// Per-edge reference path.

/// H[i][j] = <z_u,i , z_v,j> for K x c factor matrices.
Tensor edge_feature_map(const Tensor& zu, const Tensor& zv);
/// sum_ij W[i][j] H[i][j].
Tensor score_pairwise(const Tensor& h, const Tensor& weights);
/// <w, [z_u | z_v]> with each node's factors flattened in factor order.
Tensor score_concat(const Tensor& zu, const Tensor& zv, const Tensor& w);

// Batched decoders over an edge list. `z` is n x (K c) as produced by
// DisentangledEmbedding::stacked(). Both return one logit per edge.
Tensor pairwise_logits(const Tensor& z, std::size_t factors, std::span<const SignedEdge> edges,
                       const Tensor& weights);
Tensor concat_logits(const Tensor& z, std::span<const SignedEdge> edges, const Tensor& w);

/// Mean over the n K (node, factor) pairs of the cross-entropy of
/// softmax(W_disc z_uk + b_disc) against class k.
Tensor disc_loss(const DisentangledEmbedding& z, const Tensor& weight, const Tensor& bias);

/// bce + lambda disc. The regularizer lives in the optimizer's weight decay.
Tensor total_loss(const Tensor& bce, const Tensor& disc, double lambda_disc);

inline bool predict_sign(double probability) { return probability >= 0.5; }

/// 1 for positive edges, 0 for negative ones.
std::vector<double> edge_labels(std::span<const SignedEdge> edges);

}  // namespace dines
