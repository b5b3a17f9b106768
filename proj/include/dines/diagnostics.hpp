#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dines/encoder.hpp"
#include "dines/graph.hpp"

namespace dines {

/// Mean silhouette coefficient of `points` (row-major, `dim` columns) under
/// integer cluster labels, with Euclidean distance. A point alone in its
/// cluster scores 0, as does a point with a = b = 0.
double silhouette(std::span<const double> points, std::size_t dim,
                  std::span<const std::size_t> labels);

/// Silhouette of the factor vectors z_{u,k}, labelled by k, over a random
/// subsample of min(sample_size, n) nodes. Throws MetricError when K < 2.
double silhouette_score(const DisentangledEmbedding& z, std::size_t sample_size = 2000,
                        std::uint64_t seed = 0);

/// For each direction, Spearman correlation between the norm of a node's
/// concatenated layer-`layer` messages and its degree in that direction,
/// over nodes with degree >= 1. Indexed like kDirections.
std::array<double, 4> degree_correlation(const SignedDigraph& g, const Tensor& features,
                                         const EncoderConfig& config, const EncoderParams& params,
                                         std::size_t layer = 1);

/// Per-node norms of the concatenated messages, indexed like kDirections.
std::array<std::vector<double>, 4> message_norms(const SignedDigraph& g, const Tensor& features,
                                                 const EncoderConfig& config,
                                                 const EncoderParams& params,
                                                 std::size_t layer = 1);

/// Counts of predicted probabilities in `bins` equal-width bins over [0, 1],
/// split by the true sign.
struct ProbabilityHistogram {
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;
};
ProbabilityHistogram probability_histogram(std::span<const double> probabilities,
                                           std::span<const SignedEdge> edges, std::size_t bins);

}  // namespace dines
