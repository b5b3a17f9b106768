#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dines/graph.hpp"
#include "dines/tensor.hpp"

namespace dines {

enum class AggregatorKind { Sum, Mean, Max, Attention };

std::optional<AggregatorKind> parse_aggregator(std::string_view name);
std::string aggregator_name(AggregatorKind kind);

struct EncoderConfig {
  std::size_t factors = 8;
  std::size_t layers = 2;
  std::size_t input_dim = 64;
  /// d_0..d_L. Empty means every layer has width `output_dim`.
  std::vector<std::size_t> widths;
  std::size_t output_dim = 64;
  AggregatorKind aggregator = AggregatorKind::Sum;

  /// Throws ConfigError on K = 0, L = 0, d_in = 0, a wrong number of widths,
  /// or a width that is zero or not divisible by K.
  void validate() const;
  std::size_t width(std::size_t layer) const;
  std::size_t factor_width(std::size_t layer) const { return width(layer) / factors; }
};

/// Aggregator parameters for one (layer, factor, direction). Only the member
/// matching the configured aggregator is defined.
struct AggregatorWeights {
  Tensor attention;  // 2 x c: row 0 scores the receiving node, row 1 the neighbor
  Tensor pool;       // c x c, applied as W f
};

struct FactorLayerParams {
  Tensor weight;  // 5 c_{l-1} x c_l, input is [self | out+ | out- | in+ | in-]
  Tensor bias;    // c_l
  std::array<AggregatorWeights, 4> aggregators;
};

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

struct EncoderParams {
  std::vector<Tensor> init_weight;  // per factor, d_in x c_0
  std::vector<Tensor> init_bias;    // per factor, c_0
  std::vector<std::vector<FactorLayerParams>> layers;  // [layer - 1][factor]

  /// Glorot-uniform weights and zero biases, drawn in a fixed order.
  static EncoderParams initialize(const EncoderConfig& config, std::mt19937_64& rng);
  std::vector<NamedTensor> named() const;
};

/// Uniform(-r, r) with r = sqrt(6 / (fan_in + fan_out)).
Tensor glorot_uniform(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

/// Per node u, the K factor vectors of the last layer. factors[k] is n x c.
struct DisentangledEmbedding {
  std::vector<Tensor> factors;

  std::size_t node_count() const { return factors.empty() ? 0 : factors[0].rows(); }
  std::size_t factor_count() const { return factors.size(); }
  std::size_t factor_width() const { return factors.empty() ? 0 : factors[0].cols(); }
  /// n x (K c) with factor k in columns [k c, (k + 1) c).
  Tensor stacked() const;
  /// K x c matrix of node u's factors, without history.
  Tensor node(std::size_t u) const;
};

// Single-node reference path. These compose generic tensor ops and serve as
// the oracle for the batched encoder below.

/// normalize(tanh(x W + b)) for one feature vector.
Tensor initial_disentangle(const Tensor& x, const Tensor& weight, const Tensor& bias);

/// Message slice for one factor and direction. An empty neighbor set yields
/// zeros of the width of `self`.
Tensor aggregate(AggregatorKind kind, const Tensor& self, std::span<const Tensor> neighbors,
                 const AggregatorWeights& weights);

/// One dsg-conv update for one node and factor. `neighbors[d]` holds the
/// previous-layer factor vectors of the node's neighbors in direction d.
Tensor dsg_conv(AggregatorKind kind, const Tensor& self,
                const std::array<std::vector<Tensor>, 4>& neighbors,
                const FactorLayerParams& params);

/// Batched messages for every node, indexed [direction][factor], each n x c.
using LayerMessages = std::array<std::vector<Tensor>, 4>;

/// Full encoder over all nodes. Throws DimensionError when the feature width
/// or node count does not match. When `probe_layer` is in [1, L] and
/// `messages` is non-null, the messages computed in that layer are stored.
DisentangledEmbedding encode_all(const SignedDigraph& g, const Tensor& features,
                                 const EncoderConfig& config, const EncoderParams& params,
                                 std::size_t probe_layer = 0, LayerMessages* messages = nullptr);

/// Writes a header line `n K d` (d = K times the factor width) then one line
/// per node with its K factors concatenated.
void save_embedding(const std::filesystem::path& path, const DisentangledEmbedding& z);

}  // namespace dines
