#include "dines/graph_ops.hpp"

#include <algorithm>
#include <cmath>

#include "dines/error.hpp"

namespace dines {
namespace {

using Node = Tensor::Node;

void check_input(const Tensor& x, const AdjacencyPtr& adj, const char* op) {
  if (!adj) throw UsageError(std::string(op) + ": null adjacency");
  if (x.rank() != 2 || x.rows() != adj->node_count()) {
    throw DimensionError(std::string(op) + ": features " + shape_string(x.shape()) +
                         " do not match " + std::to_string(adj->node_count()) + " nodes");
  }
}

Tensor weighted_sum(const Tensor& x, const AdjacencyPtr& adj, bool average, const char* op) {
  check_input(x, adj, op);
  const std::size_t n = x.rows(), c = x.cols();
  const double* xv = x.values().data();
  std::vector<double> out(n * c, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t deg = adj->degree(u);
    if (deg == 0) continue;
    double* o = out.data() + u * c;
    for (std::size_t e = adj->offsets[u]; e < adj->offsets[u + 1]; ++e) {
      const double* src = xv + static_cast<std::size_t>(adj->targets[e]) * c;
      for (std::size_t j = 0; j < c; ++j) o[j] += src[j];
    }
    if (average) {
      const double inv = 1.0 / static_cast<double>(deg);
      for (std::size_t j = 0; j < c; ++j) o[j] *= inv;
    }
  }
  return make_result(op, {n, c}, std::move(out), {x}, [adj, n, c, average](Node& self) {
    if (!self.parent_needs_grad(0)) return;
    double* dx = self.parent_grad(0).data();
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t deg = adj->degree(u);
      if (deg == 0) continue;
      const double w = average ? 1.0 / static_cast<double>(deg) : 1.0;
      const double* g = self.grad.data() + u * c;
      for (std::size_t e = adj->offsets[u]; e < adj->offsets[u + 1]; ++e) {
        double* d = dx + static_cast<std::size_t>(adj->targets[e]) * c;
        for (std::size_t j = 0; j < c; ++j) d[j] += w * g[j];
      }
    }
  });
}

}  // namespace

Tensor neighbor_sum(const Tensor& x, const AdjacencyPtr& adj) {
  return weighted_sum(x, adj, false, "neighbor_sum");
}

Tensor neighbor_mean(const Tensor& x, const AdjacencyPtr& adj) {
  return weighted_sum(x, adj, true, "neighbor_mean");
}

Tensor neighbor_max(const Tensor& x, const AdjacencyPtr& adj) {
  check_input(x, adj, "neighbor_max");
  const std::size_t n = x.rows(), c = x.cols();
  const double* xv = x.values().data();
  std::vector<double> out(n * c, 0.0);
  // Source row of each output element; n marks "no neighbors".
  std::vector<std::uint32_t> argmax(n * c, static_cast<std::uint32_t>(n));
  for (std::size_t u = 0; u < n; ++u) {
    if (adj->degree(u) == 0) continue;
    double* o = out.data() + u * c;
    std::uint32_t* a = argmax.data() + u * c;
    const std::size_t first = adj->targets[adj->offsets[u]];
    std::copy_n(xv + first * c, c, o);
    std::fill_n(a, c, static_cast<std::uint32_t>(first));
    for (std::size_t e = adj->offsets[u] + 1; e < adj->offsets[u + 1]; ++e) {
      const std::uint32_t v = adj->targets[e];
      const double* src = xv + static_cast<std::size_t>(v) * c;
      for (std::size_t j = 0; j < c; ++j) {
        if (src[j] > o[j]) {
          o[j] = src[j];
          a[j] = v;
        }
      }
    }
  }
  return make_result("neighbor_max", {n, c}, std::move(out), {x},
                     [n, c, argmax = std::move(argmax)](Node& self) {
                       if (!self.parent_needs_grad(0)) return;
                       double* dx = self.parent_grad(0).data();
                       for (std::size_t i = 0; i < n * c; ++i) {
                         if (argmax[i] == n) continue;
                         dx[static_cast<std::size_t>(argmax[i]) * c + i % c] += self.grad[i];
                       }
                     });
}

Tensor neighbor_attention(const Tensor& x, const Tensor& self_score, const Tensor& neighbor_score,
                          const AdjacencyPtr& adj, std::vector<double>* weights_out,
                          double slope) {
  check_input(x, adj, "neighbor_attention");
  const std::size_t n = x.rows(), c = x.cols();
  if (self_score.size() != n || neighbor_score.size() != n) {
    throw DimensionError("neighbor_attention: score vectors must have one entry per node");
  }
  const double* xv = x.values().data();
  const double* ps = self_score.values().data();
  const double* qs = neighbor_score.values().data();
  const std::size_t entries = adj->targets.size();
  std::vector<double> alpha(entries, 0.0);
  std::vector<double> pre(entries, 0.0);
  std::vector<double> out(n * c, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t lo = adj->offsets[u], hi = adj->offsets[u + 1];
    if (lo == hi) continue;
    double mx = -INFINITY;
    for (std::size_t e = lo; e < hi; ++e) {
      pre[e] = ps[u] + qs[adj->targets[e]];
      const double act = pre[e] > 0 ? pre[e] : slope * pre[e];
      alpha[e] = act;
      mx = std::max(mx, act);
    }
    double z = 0.0;
    for (std::size_t e = lo; e < hi; ++e) z += (alpha[e] = std::exp(alpha[e] - mx));
    double* o = out.data() + u * c;
    for (std::size_t e = lo; e < hi; ++e) {
      alpha[e] /= z;
      const double* src = xv + static_cast<std::size_t>(adj->targets[e]) * c;
      for (std::size_t j = 0; j < c; ++j) o[j] += alpha[e] * src[j];
    }
  }
  if (weights_out) *weights_out = alpha;
  return make_result(
      "neighbor_attention", {n, c}, std::move(out), {x, self_score, neighbor_score},
      [adj, n, c, slope, alpha = std::move(alpha), pre = std::move(pre)](Node& self) {
        const auto& xv = self.parent_value(0);
        const bool need_x = self.parent_needs_grad(0);
        const bool need_p = self.parent_needs_grad(1);
        const bool need_q = self.parent_needs_grad(2);
        double* dx = need_x ? self.parent_grad(0).data() : nullptr;
        double* dp = need_p ? self.parent_grad(1).data() : nullptr;
        double* dq = need_q ? self.parent_grad(2).data() : nullptr;
        std::vector<double> dalpha;
        for (std::size_t u = 0; u < n; ++u) {
          const std::size_t lo = adj->offsets[u], hi = adj->offsets[u + 1];
          if (lo == hi) continue;
          const double* g = self.grad.data() + u * c;
          dalpha.assign(hi - lo, 0.0);
          double weighted = 0.0;
          for (std::size_t e = lo; e < hi; ++e) {
            const std::size_t v = adj->targets[e];
            const double* src = xv.data() + v * c;
            double d = 0.0;
            for (std::size_t j = 0; j < c; ++j) d += g[j] * src[j];
            dalpha[e - lo] = d;
            weighted += alpha[e] * d;
            if (dx) {
              double* dst = dx + v * c;
              for (std::size_t j = 0; j < c; ++j) dst[j] += alpha[e] * g[j];
            }
          }
          if (!dp && !dq) continue;
          for (std::size_t e = lo; e < hi; ++e) {
            const double dlogit = alpha[e] * (dalpha[e - lo] - weighted);
            const double dpre = dlogit * (pre[e] > 0 ? 1.0 : slope);
            if (dp) dp[u] += dpre;
            if (dq) dq[adj->targets[e]] += dpre;
          }
        }
      });
}

}  // namespace dines
