#include "dines/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "dines/error.hpp"
#include "dines/metrics.hpp"

namespace dines {

double silhouette(std::span<const double> points, std::size_t dim,
                  std::span<const std::size_t> labels) {
  if (dim == 0 || points.size() != labels.size() * dim) {
    throw DimensionError("silhouette: points do not match labels");
  }
  const std::size_t n = labels.size();
  if (n == 0) throw MetricError("silhouette of an empty set");
  const std::size_t clusters = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> size(clusters, 0);
  for (auto l : labels) ++size[l];

  double total = 0.0;
  std::vector<double> dist_sum(clusters);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
    const double* p = points.data() + i * dim;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double* q = points.data() + j * dim;
      double sq = 0.0;
      for (std::size_t t = 0; t < dim; ++t) sq += (p[t] - q[t]) * (p[t] - q[t]);
      dist_sum[labels[j]] += std::sqrt(sq);
    }
    const std::size_t own = labels[i];
    if (size[own] < 2) continue;
    const double a = dist_sum[own] / static_cast<double>(size[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clusters; ++c) {
      if (c == own || size[c] == 0) continue;
      b = std::min(b, dist_sum[c] / static_cast<double>(size[c]));
    }
    if (!std::isfinite(b)) continue;  // only one non-empty cluster
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

double silhouette_score(const DisentangledEmbedding& z, std::size_t sample_size,
                        std::uint64_t seed) {
  const std::size_t k_count = z.factor_count();
  if (k_count < 2) throw MetricError("silhouette needs at least two factors");
  const std::size_t n = z.node_count();
  std::vector<std::size_t> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  if (sample_size < n) {
    std::mt19937_64 rng(seed);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    nodes.resize(sample_size);
    std::sort(nodes.begin(), nodes.end());
  }
  const std::size_t c = z.factor_width();
  std::vector<double> points;
  std::vector<std::size_t> labels;
  points.reserve(nodes.size() * k_count * c);
  for (std::size_t u : nodes) {
    for (std::size_t k = 0; k < k_count; ++k) {
      auto row = z.factors[k].values().subspan(u * c, c);
      points.insert(points.end(), row.begin(), row.end());
      labels.push_back(k);
    }
  }
  return silhouette(points, c, labels);
}

std::array<std::vector<double>, 4> message_norms(const SignedDigraph& g, const Tensor& features,
                                                 const EncoderConfig& config,
                                                 const EncoderParams& params, std::size_t layer) {
  if (layer == 0 || layer > config.layers) {
    throw UsageError("message layer must lie in [1, " + std::to_string(config.layers) + "]");
  }
  LayerMessages messages;
  encode_all(g, features, config, params, layer, &messages);
  const std::size_t n = g.node_count();
  std::array<std::vector<double>, 4> out;
  for (std::size_t d = 0; d < 4; ++d) {
    std::vector<double> sq(n, 0.0);
    for (const auto& m : messages[d]) {
      const std::size_t c = m.cols();
      auto v = m.values();
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t t = 0; t < c; ++t) sq[u] += v[u * c + t] * v[u * c + t];
    }
    for (auto& s : sq) s = std::sqrt(s);
    out[d] = std::move(sq);
  }
  return out;
}

std::array<double, 4> degree_correlation(const SignedDigraph& g, const Tensor& features,
                                         const EncoderConfig& config, const EncoderParams& params,
                                         std::size_t layer) {
  const auto norms = message_norms(g, features, config, params, layer);
  std::array<double, 4> out{};
  for (auto d : kDirections) {
    const auto di = static_cast<std::size_t>(d);
    std::vector<double> x, y;
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
      const std::size_t deg = g.degree(u, d);
      if (deg == 0) continue;
      x.push_back(norms[di][u]);
      y.push_back(static_cast<double>(deg));
    }
    if (x.size() < 3) {
      throw MetricError("degree correlation for " + std::string(direction_name(d)) +
                        " has fewer than 3 nodes with neighbors");
    }
    out[di] = spearman(x, y);
  }
  return out;
}

ProbabilityHistogram probability_histogram(std::span<const double> probabilities,
                                           std::span<const SignedEdge> edges, std::size_t bins) {
  if (bins == 0) throw UsageError("histogram needs at least one bin");
  if (probabilities.size() != edges.size()) {
    throw DimensionError("histogram: one probability per edge expected");
  }
  ProbabilityHistogram h{std::vector<std::size_t>(bins, 0), std::vector<std::size_t>(bins, 0)};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double p = std::clamp(probabilities[i], 0.0, 1.0);
    const auto b = std::min(bins - 1, static_cast<std::size_t>(p * static_cast<double>(bins)));
    ++(edges[i].positive() ? h.positive : h.negative)[b];
  }
  return h;
}

}  // namespace dines
