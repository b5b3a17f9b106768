#include "dines/decoder.hpp"

#include <memory>
#include <string>

#include "dines/error.hpp"
#include "dines/ops.hpp"

namespace dines {

using Node = Tensor::Node;

std::vector<NamedTensor> DecoderParams::named() const {
  std::vector<NamedTensor> out;
  if (pairwise.defined()) out.push_back({"decoder.pairwise", pairwise});
  if (concat.defined()) out.push_back({"decoder.concat", concat});
  if (disc_weight.defined()) out.push_back({"disc.weight", disc_weight});
  if (disc_bias.defined()) out.push_back({"disc.bias", disc_bias});
  return out;
}

Tensor edge_feature_map(const Tensor& zu, const Tensor& zv) {
  if (zu.rank() != 2 || zv.rank() != 2 || zu.shape() != zv.shape()) {
    throw DimensionError("edge_feature_map: factor matrices " + shape_string(zu.shape()) +
                         " and " + shape_string(zv.shape()) + " differ");
  }
  return matmul(zu, transpose(zv));
}

Tensor score_pairwise(const Tensor& h, const Tensor& weights) {
  if (h.shape() != weights.shape()) {
    throw DimensionError("score_pairwise: H " + shape_string(h.shape()) + " vs W_s " +
                         shape_string(weights.shape()));
  }
  return sum(mul(h, weights));
}

Tensor score_concat(const Tensor& zu, const Tensor& zv, const Tensor& w) {
  const Tensor parts[] = {reshape(zu, {zu.size()}), reshape(zv, {zv.size()})};
  return dot(w, concat(parts));
}

Tensor pairwise_logits(const Tensor& z, std::size_t factors, std::span<const SignedEdge> edges,
                       const Tensor& weights) {
  const std::size_t width = z.cols();
  if (factors == 0 || width % factors != 0) throw DimensionError("pairwise_logits: bad K");
  if (weights.rank() != 2 || weights.rows() != factors || weights.cols() != factors) {
    throw DimensionError("pairwise_logits: W_s must be K x K");
  }
  const std::size_t c = width / factors;
  const std::size_t n = z.rows();
  const std::size_t m = edges.size();
  std::vector<SignedEdge> es(edges.begin(), edges.end());
  for (const auto& e : es) {
    if (e.src >= n || e.dst >= n) throw DimensionError("pairwise_logits: edge outside embedding");
  }

  // sum_ij W_ij <z_ui, z_vj> = <z_u, y_v> with y_vi = sum_j W_ij z_vj, so one
  // K^2 c product per node replaces one per edge.
  auto zv = z.values();
  auto wv = weights.values();
  auto y = std::make_shared<std::vector<double>>(n * width, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    const double* zr = zv.data() + v * width;
    double* yr = y->data() + v * width;
    for (std::size_t i = 0; i < factors; ++i)
      for (std::size_t j = 0; j < factors; ++j) {
        const double w = wv[i * factors + j];
        for (std::size_t t = 0; t < c; ++t) yr[i * c + t] += w * zr[j * c + t];
      }
  }
  std::vector<double> out(m);
  for (std::size_t e = 0; e < m; ++e) {
    const double* a = zv.data() + es[e].src * width;
    const double* b = y->data() + es[e].dst * width;
    double s = 0.0;
    for (std::size_t k = 0; k < width; ++k) s += a[k] * b[k];
    out[e] = s;
  }
  return make_result(
      "pairwise_logits", {m}, std::move(out), {z, weights},
      [es = std::move(es), y, factors, c, width, n](Node& self) {
        const bool need_z = self.parent_needs_grad(0);
        const bool need_w = self.parent_needs_grad(1);
        const auto& zv = self.parent_value(0);
        const auto& wv = self.parent_value(1);
        double* gz = need_z ? self.parent_grad(0).data() : nullptr;
        double* gw = need_w ? self.parent_grad(1).data() : nullptr;
        // gradient w.r.t. y, then pushed through y = (W x I) z
        std::vector<double> gy(n * width, 0.0);
        for (std::size_t e = 0; e < es.size(); ++e) {
          const double g = self.grad[e];
          if (g == 0.0) continue;
          const std::size_t su = es[e].src * width, sv = es[e].dst * width;
          if (gz) {
            double* ga = gz + su;
            const double* b = y->data() + sv;
            for (std::size_t k = 0; k < width; ++k) ga[k] += g * b[k];
          }
          const double* a = zv.data() + su;
          double* gb = gy.data() + sv;
          for (std::size_t k = 0; k < width; ++k) gb[k] += g * a[k];
        }
        for (std::size_t v = 0; v < n; ++v) {
          const double* gyr = gy.data() + v * width;
          const double* zr = zv.data() + v * width;
          for (std::size_t i = 0; i < factors; ++i) {
            for (std::size_t j = 0; j < factors; ++j) {
              if (gw) {
                double h = 0.0;
                for (std::size_t t = 0; t < c; ++t) h += gyr[i * c + t] * zr[j * c + t];
                gw[i * factors + j] += h;
              }
              if (gz) {
                const double w = wv[i * factors + j];
                double* gzr = gz + v * width + j * c;
                for (std::size_t t = 0; t < c; ++t) gzr[t] += w * gyr[i * c + t];
              }
            }
          }
        }
      });
}

Tensor concat_logits(const Tensor& z, std::span<const SignedEdge> edges, const Tensor& w) {
  const std::size_t width = z.cols();
  if (w.size() != 2 * width) {
    throw DimensionError("concat_logits: w has " + std::to_string(w.size()) + " entries, expected " +
                         std::to_string(2 * width));
  }
  const std::size_t n = z.rows();
  std::vector<SignedEdge> es(edges.begin(), edges.end());
  for (const auto& e : es) {
    if (e.src >= n || e.dst >= n) throw DimensionError("concat_logits: edge outside embedding");
  }
  auto zv = z.values();
  auto wv = w.values();
  std::vector<double> out(es.size());
  for (std::size_t e = 0; e < es.size(); ++e) {
    double s = 0.0;
    for (std::size_t t = 0; t < width; ++t) {
      s += wv[t] * zv[es[e].src * width + t] + wv[width + t] * zv[es[e].dst * width + t];
    }
    out[e] = s;
  }
  const std::size_t m = es.size();
  return make_result("concat_logits", {m}, std::move(out), {z, w},
                     [es = std::move(es), width](Node& self) {
                       const auto& zv = self.parent_value(0);
                       const auto& wv = self.parent_value(1);
                       const bool need_z = self.parent_needs_grad(0);
                       const bool need_w = self.parent_needs_grad(1);
                       for (std::size_t e = 0; e < es.size(); ++e) {
                         const double g = self.grad[e];
                         const std::size_t su = es[e].src * width, sv = es[e].dst * width;
                         if (need_w) {
                           auto& gw = self.parent_grad(1);
                           for (std::size_t t = 0; t < width; ++t) {
                             gw[t] += g * zv[su + t];
                             gw[width + t] += g * zv[sv + t];
                           }
                         }
                         if (need_z) {
                           auto& gz = self.parent_grad(0);
                           for (std::size_t t = 0; t < width; ++t) {
                             gz[su + t] += g * wv[t];
                             gz[sv + t] += g * wv[width + t];
                           }
                         }
                       }
                     });
}

Tensor disc_loss(const DisentangledEmbedding& z, const Tensor& weight, const Tensor& bias) {
  const std::size_t k_count = z.factor_count();
  if (k_count == 0) throw DimensionError("disc_loss needs at least one factor");
  if (weight.rank() != 2 || weight.rows() != k_count || weight.cols() != z.factor_width()) {
    throw DimensionError("disc_loss: W_disc " + shape_string(weight.shape()) +
                         " does not match K x c");
  }
  const std::size_t n = z.node_count();
  const Tensor wt = transpose(weight);
  std::vector<Tensor> logits;
  std::vector<std::size_t> labels;
  logits.reserve(k_count);
  labels.reserve(n * k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    logits.push_back(add_row(matmul(z.factors[k], wt), bias));
    labels.insert(labels.end(), n, k);
  }
  // Stack the K blocks of n rows: rows are ordered by factor, then node.
  std::vector<Tensor> flat;
  flat.reserve(k_count);
  for (auto& t : logits) flat.push_back(reshape(t, {t.size()}));
  return cross_entropy_rows(reshape(concat(flat), {n * k_count, k_count}), labels);
}

Tensor total_loss(const Tensor& bce, const Tensor& disc, double lambda_disc) {
  if (lambda_disc < 0.0) throw UsageError("lambda_disc must be non-negative");
  if (lambda_disc == 0.0 || !disc.defined()) return bce;
  return add(bce, scale(disc, lambda_disc));
}

std::vector<double> edge_labels(std::span<const SignedEdge> edges) {
  std::vector<double> y;
  y.reserve(edges.size());
  for (const auto& e : edges) y.push_back(e.positive() ? 1.0 : 0.0);
  return y;
}

}  // namespace dines
