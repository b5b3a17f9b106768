#include "dines/encoder.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "dines/error.hpp"
#include "dines/graph_ops.hpp"
#include "dines/ops.hpp"

namespace dines {

std::optional<AggregatorKind> parse_aggregator(std::string_view name) {
  if (name == "sum") return AggregatorKind::Sum;
  if (name == "mean") return AggregatorKind::Mean;
  if (name == "max") return AggregatorKind::Max;
  if (name == "attention") return AggregatorKind::Attention;
  return std::nullopt;
}

std::string aggregator_name(AggregatorKind kind) {
  switch (kind) {
    case AggregatorKind::Sum: return "sum";
    case AggregatorKind::Mean: return "mean";
    case AggregatorKind::Max: return "max";
    case AggregatorKind::Attention: return "attention";
  }
  throw UsageError("unknown aggregator");
}

void EncoderConfig::validate() const {
  if (factors == 0) throw ConfigError("factor count K must be at least 1");
  if (layers == 0) throw ConfigError("layer count L must be at least 1");
  if (input_dim == 0) throw ConfigError("input dimension must be positive");
  if (!widths.empty() && widths.size() != layers + 1) {
    throw ConfigError("expected " + std::to_string(layers + 1) + " layer widths, got " +
                      std::to_string(widths.size()));
  }
  for (std::size_t l = 0; l <= layers; ++l) {
    const std::size_t w = width(l);
    if (w == 0 || w % factors != 0) {
      throw ConfigError("layer " + std::to_string(l) + " width " + std::to_string(w) +
                        " is not a positive multiple of K=" + std::to_string(factors));
    }
  }
}

std::size_t EncoderConfig::width(std::size_t layer) const {
  return widths.empty() ? output_dim : widths.at(layer);
}

Tensor glorot_uniform(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> dist(-limit, limit);
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = dist(rng);
  return Tensor::matrix(rows, cols, std::move(v), true);
}

EncoderParams EncoderParams::initialize(const EncoderConfig& config, std::mt19937_64& rng) {
  config.validate();
  const std::size_t k_count = config.factors;
  EncoderParams p;
  const std::size_t c0 = config.factor_width(0);
  for (std::size_t k = 0; k < k_count; ++k) {
    p.init_weight.push_back(glorot_uniform(config.input_dim, c0, rng));
    p.init_bias.push_back(Tensor::zeros({c0}, true));
  }
  p.layers.resize(config.layers);
  for (std::size_t l = 1; l <= config.layers; ++l) {
    const std::size_t c_in = config.factor_width(l - 1);
    const std::size_t c_out = config.factor_width(l);
    auto& layer = p.layers[l - 1];
    layer.resize(k_count);
    for (auto& f : layer) {
      f.weight = glorot_uniform(5 * c_in, c_out, rng);
      f.bias = Tensor::zeros({c_out}, true);
      for (auto& agg : f.aggregators) {
        if (config.aggregator == AggregatorKind::Attention) {
          agg.attention = glorot_uniform(2, c_in, rng);
        } else if (config.aggregator == AggregatorKind::Max) {
          agg.pool = glorot_uniform(c_in, c_in, rng);
        }
      }
    }
  }
  return p;
}

std::vector<NamedTensor> EncoderParams::named() const {
  std::vector<NamedTensor> out;
  for (std::size_t k = 0; k < init_weight.size(); ++k) {
    out.push_back({"init." + std::to_string(k) + ".weight", init_weight[k]});
    out.push_back({"init." + std::to_string(k) + ".bias", init_bias[k]});
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (std::size_t k = 0; k < layers[l].size(); ++k) {
      const auto prefix = "layer" + std::to_string(l + 1) + "." + std::to_string(k) + ".";
      const auto& f = layers[l][k];
      out.push_back({prefix + "weight", f.weight});
      out.push_back({prefix + "bias", f.bias});
      for (auto d : kDirections) {
        const auto& agg = f.aggregators[static_cast<std::size_t>(d)];
        const auto dname = std::string(direction_name(d));
        if (agg.attention.defined()) out.push_back({prefix + "attention." + dname, agg.attention});
        if (agg.pool.defined()) out.push_back({prefix + "pool." + dname, agg.pool});
      }
    }
  }
  return out;
}

Tensor DisentangledEmbedding::stacked() const {
  if (factors.size() == 1) return factors[0];
  return concat_cols(factors);
}

Tensor DisentangledEmbedding::node(std::size_t u) const {
  const std::size_t c = factor_width();
  std::vector<double> v;
  v.reserve(factors.size() * c);
  for (const auto& f : factors) {
    auto row = f.values().subspan(u * c, c);
    v.insert(v.end(), row.begin(), row.end());
  }
  return Tensor::matrix(factors.size(), c, std::move(v));
}

Tensor initial_disentangle(const Tensor& x, const Tensor& weight, const Tensor& bias) {
  if (x.size() != weight.rows()) {
    throw DimensionError("feature length " + std::to_string(x.size()) + " does not match W_k " +
                         shape_string(weight.shape()));
  }
  const Tensor h = add_row(matmul(reshape(x, {1, x.size()}), weight), bias);
  return l2_normalize(reshape(tanh(h), {weight.cols()}));
}

Tensor aggregate(AggregatorKind kind, const Tensor& self, std::span<const Tensor> neighbors,
                 const AggregatorWeights& weights) {
  const std::size_t c = self.size();
  if (neighbors.empty()) return Tensor::zeros({c});
  for (const auto& f : neighbors) {
    if (f.size() != c) throw DimensionError("neighbor factor width differs from self");
  }
  switch (kind) {
    case AggregatorKind::Sum:
    case AggregatorKind::Mean: {
      Tensor acc = neighbors[0];
      for (std::size_t i = 1; i < neighbors.size(); ++i) acc = add(acc, neighbors[i]);
      if (kind == AggregatorKind::Mean) acc = scale(acc, 1.0 / static_cast<double>(neighbors.size()));
      return acc;
    }
    case AggregatorKind::Max: {
      // rows W f_v, computed as F W^T
      const Tensor projected = matmul(stack_rows(neighbors), transpose(weights.pool));
      return max_rows(projected);
    }
    case AggregatorKind::Attention: {
      const Tensor a = reshape(weights.attention, {2 * c});
      std::vector<Tensor> logits;
      logits.reserve(neighbors.size());
      for (const auto& f : neighbors) {
        const Tensor pair[] = {self, f};
        logits.push_back(reshape(leaky_relu(dot(a, concat(pair))), {1}));
      }
      const Tensor alpha = softmax(concat(logits));
      return reshape(matmul(reshape(alpha, {1, neighbors.size()}), stack_rows(neighbors)), {c});
    }
  }
  throw UsageError("unknown aggregator");
}

Tensor dsg_conv(AggregatorKind kind, const Tensor& self,
                const std::array<std::vector<Tensor>, 4>& neighbors,
                const FactorLayerParams& params) {
  std::vector<Tensor> parts{self};
  for (std::size_t d = 0; d < 4; ++d) {
    parts.push_back(aggregate(kind, self, neighbors[d], params.aggregators[d]));
  }
  const Tensor input = concat(parts);
  const Tensor h = add_row(matmul(reshape(input, {1, input.size()}), params.weight), params.bias);
  return l2_normalize(reshape(tanh(h), {params.weight.cols()}));
}

namespace {

Tensor batched_message(AggregatorKind kind, const Tensor& f, const AdjacencyPtr& adj,
                       const AggregatorWeights& w) {
  switch (kind) {
    case AggregatorKind::Sum: return neighbor_sum(f, adj);
    case AggregatorKind::Mean: return neighbor_mean(f, adj);
    case AggregatorKind::Max: return neighbor_max(matmul(f, transpose(w.pool)), adj);
    case AggregatorKind::Attention: {
      const Tensor scores = matmul(f, transpose(w.attention));  // n x 2
      return neighbor_attention(f, slice_cols(scores, 0, 1), slice_cols(scores, 1, 1), adj);
    }
  }
  throw UsageError("unknown aggregator");
}

}  // namespace

DisentangledEmbedding encode_all(const SignedDigraph& g, const Tensor& features,
                                 const EncoderConfig& config, const EncoderParams& params,
                                 std::size_t probe_layer, LayerMessages* messages) {
  config.validate();
  if (features.rank() != 2 || features.rows() != g.node_count() ||
      features.cols() != config.input_dim) {
    throw DimensionError("features " + shape_string(features.shape()) + " do not match n=" +
                         std::to_string(g.node_count()) +
                         ", d_in=" + std::to_string(config.input_dim));
  }
  const std::size_t k_count = config.factors;
  if (params.init_weight.size() != k_count || params.layers.size() != config.layers) {
    throw DimensionError("encoder parameters do not match the configuration");
  }

  std::vector<Tensor> f(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    f[k] = l2_normalize_rows(
        tanh(add_row(matmul(features, params.init_weight[k]), params.init_bias[k])));
  }

  for (std::size_t l = 1; l <= config.layers; ++l) {
    const auto& layer = params.layers[l - 1];
    const bool probe = messages != nullptr && l == probe_layer;
    if (probe) {
      for (auto& m : *messages) m.assign(k_count, Tensor());
    }
    std::vector<Tensor> next(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
      std::vector<Tensor> parts{f[k]};
      for (auto d : kDirections) {
        const auto di = static_cast<std::size_t>(d);
        Tensor m = batched_message(config.aggregator, f[k], g.adjacency(d), layer[k].aggregators[di]);
        if (probe) (*messages)[di][k] = m;
        parts.push_back(std::move(m));
      }
      next[k] = l2_normalize_rows(
          tanh(add_row(matmul(concat_cols(parts), layer[k].weight), layer[k].bias)));
    }
    f = std::move(next);
  }
  return DisentangledEmbedding{std::move(f)};
}

void save_embedding(const std::filesystem::path& path, const DisentangledEmbedding& z) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << z.node_count() << ' ' << z.factor_count() << ' '
      << z.factor_count() * z.factor_width() << '\n';
  const Tensor s = z.stacked();
  const std::size_t w = s.cols();
  auto v = s.values();
  char buf[32];
  std::string line;
  for (std::size_t u = 0; u < z.node_count(); ++u) {
    line.clear();
    for (std::size_t j = 0; j < w; ++j) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v[u * w + j]);
      if (j) line += ' ';
      line.append(buf, end);
    }
    out << line << '\n';
  }
}

}  // namespace dines
