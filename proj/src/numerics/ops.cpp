#include "dines/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dines/error.hpp"

namespace dines {
namespace {

using Node = Tensor::Node;

void require_matrix(const Tensor& t, const char* op) {
  if (t.rank() != 2) {
    throw DimensionError(std::string(op) + " expects a matrix, got " + shape_string(t.shape()));
  }
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) +
                         " vs " + shape_string(b.shape()));
  }
}

bool is_vector_like(const Tensor& t) {
  return t.rank() == 1 || (t.rank() == 2 && t.shape()[0] == 1);
}

// r x k times k x c into out (accumulating).
// out (r x c) += a (r x k) * b (k x c), all row-major. Each output entry is
// accumulated over p in ascending order, so results do not depend on tiling.
void gemm_acc(const double* __restrict a, const double* __restrict b, double* __restrict out,
              std::size_t r, std::size_t k, std::size_t c) {
  constexpr std::size_t MR = 4, NR = 4;
  std::size_t i = 0;
  for (; i + MR <= r; i += MR) {
    std::size_t j = 0;
    for (; j + NR <= c; j += NR) {
      double acc[MR][NR] = {};
      for (std::size_t p = 0; p < k; ++p) {
        const double* bp = b + p * c + j;
        for (std::size_t ii = 0; ii < MR; ++ii) {
          const double av = a[(i + ii) * k + p];
          for (std::size_t jj = 0; jj < NR; ++jj) acc[ii][jj] += av * bp[jj];
        }
      }
      for (std::size_t ii = 0; ii < MR; ++ii)
        for (std::size_t jj = 0; jj < NR; ++jj) out[(i + ii) * c + j + jj] += acc[ii][jj];
    }
    for (; j < c; ++j) {
      for (std::size_t ii = 0; ii < MR; ++ii) {
        double acc = 0.0;
        for (std::size_t p = 0; p < k; ++p) acc += a[(i + ii) * k + p] * b[p * c + j];
        out[(i + ii) * c + j] += acc;
      }
    }
  }
  for (; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += a[i * k + p] * b[p * c + j];
      out[i * c + j] += acc;
    }
  }
}

// out (k x c) += a^T * g for a (r x k) and g (r x c); reduces over rows in
// ascending order without materializing a^T.
void gemm_tn_acc(const double* __restrict a, const double* __restrict g, double* __restrict out,
                 std::size_t r, std::size_t k, std::size_t c) {
  constexpr std::size_t MR = 4, NR = 4;
  for (std::size_t p = 0; p < k; p += MR) {
    const std::size_t pe = std::min(MR, k - p);
    for (std::size_t j = 0; j < c; j += NR) {
      const std::size_t je = std::min(NR, c - j);
      double acc[MR][NR] = {};
      if (pe == MR && je == NR) {
        for (std::size_t i = 0; i < r; ++i) {
          const double* ar = a + i * k + p;
          const double* gr = g + i * c + j;
          for (std::size_t pp = 0; pp < MR; ++pp)
            for (std::size_t jj = 0; jj < NR; ++jj) acc[pp][jj] += ar[pp] * gr[jj];
        }
      } else {
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t pp = 0; pp < pe; ++pp)
            for (std::size_t jj = 0; jj < je; ++jj)
              acc[pp][jj] += a[i * k + p + pp] * g[i * c + j + jj];
      }
      for (std::size_t pp = 0; pp < pe; ++pp)
        for (std::size_t jj = 0; jj < je; ++jj) out[(p + pp) * c + j + jj] += acc[pp][jj];
    }
  }
}

std::vector<double> transposed(const double* a, std::size_t r, std::size_t c) {
  std::vector<double> t(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) t[j * r + i] = a[i * c + j];
  return t;
}

template <typename F, typename DF>
Tensor unary(const Tensor& a, const char* op, F f, DF df_from_output_and_input) {
  auto in = a.values();
  std::vector<double> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
  return make_result(op, a.shape(), std::move(out), {a},
                     [df_from_output_and_input](Node& self) {
                       if (!self.parent_needs_grad(0)) return;
                       auto& g = self.parent_grad(0);
                       const auto& x = self.parent_value(0);
                       for (std::size_t i = 0; i < g.size(); ++i) {
                         g[i] += self.grad[i] * df_from_output_and_input(self.value[i], x[i]);
                       }
                     });
}

void normalize_block(const double* in, double* out, std::size_t n) {
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) sq += in[i] * in[i];
  const double norm = std::sqrt(sq);
  if (norm < kNormEpsilon) {
    std::fill(out, out + n, 0.0);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = in[i] / norm;
}

// d(v/|v|) applied to upstream g: (g - y (y.g)) / |v|; zero when |v| < eps.
void normalize_block_backward(const double* in, const double* y, const double* g, double* dx,
                              std::size_t n) {
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) sq += in[i] * in[i];
  const double norm = std::sqrt(sq);
  if (norm < kNormEpsilon) return;
  double yg = 0.0;
  for (std::size_t i = 0; i < n; ++i) yg += y[i] * g[i];
  for (std::size_t i = 0; i < n; ++i) dx[i] += (g[i] - y[i] * yg) / norm;
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  const std::size_t r = a.rows(), k = a.cols(), c = b.cols();
  if (b.rows() != k) {
    throw DimensionError("matmul: inner dimensions differ, " + shape_string(a.shape()) + " x " +
                         shape_string(b.shape()));
  }
  std::vector<double> out(r * c, 0.0);
  gemm_acc(a.values().data(), b.values().data(), out.data(), r, k, c);
  return make_result("matmul", {r, c}, std::move(out), {a, b}, [r, k, c](Node& self) {
    const double* g = self.grad.data();
    if (self.parent_needs_grad(0)) {
      // dA = G * B^T
      const auto bt = transposed(self.parent_value(1).data(), k, c);
      gemm_acc(g, bt.data(), self.parent_grad(0).data(), r, c, k);
    }
    if (self.parent_needs_grad(1)) {
      // dB = A^T * G
      gemm_tn_acc(self.parent_value(0).data(), g, self.parent_grad(1).data(), r, k, c);
    }
  });
}

Tensor transpose(const Tensor& a) {
  require_matrix(a, "transpose");
  const std::size_t r = a.rows(), c = a.cols();
  auto in = a.values();
  std::vector<double> out(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[j * r + i] = in[i * c + j];
  return make_result("transpose", {c, r}, std::move(out), {a}, [r, c](Node& self) {
    if (!self.parent_needs_grad(0)) return;
    auto& g = self.parent_grad(0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) g[i * c + j] += self.grad[j * r + i];
  });
}

Tensor add_row(const Tensor& matrix, const Tensor& bias) {
  require_matrix(matrix, "add_row");
  const std::size_t r = matrix.rows(), c = matrix.cols();
  if (bias.size() != c) {
    throw DimensionError("add_row: bias " + shape_string(bias.shape()) + " does not fit " +
                         shape_string(matrix.shape()));
  }
  auto m = matrix.values();
  auto b = bias.values();
  std::vector<double> out(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[i * c + j] = m[i * c + j] + b[j];
  return make_result("add_row", {r, c}, std::move(out), {matrix, bias}, [r, c](Node& self) {
    if (self.parent_needs_grad(0)) {
      auto& g = self.parent_grad(0);
      for (std::size_t i = 0; i < r * c; ++i) g[i] += self.grad[i];
    }
    if (self.parent_needs_grad(1)) {
      auto& g = self.parent_grad(1);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) g[j] += self.grad[i * c + j];
    }
  });
}

Tensor dot(const Tensor& a, const Tensor& b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: size mismatch " + shape_string(a.shape()) + " vs " +
                         shape_string(b.shape()));
  }
  auto x = a.values();
  auto y = b.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return make_result("dot", {}, {acc}, {a, b}, [](Node& self) {
    const double g = self.grad[0];
    if (self.parent_needs_grad(0)) {
      auto& ga = self.parent_grad(0);
      const auto& y = self.parent_value(1);
      for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g * y[i];
    }
    if (self.parent_needs_grad(1)) {
      auto& gb = self.parent_grad(1);
      const auto& x = self.parent_value(0);
      for (std::size_t i = 0; i < gb.size(); ++i) gb[i] += g * x[i];
    }
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  auto x = a.values();
  auto y = b.values();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return make_result("add", a.shape(), std::move(out), {a, b}, [](Node& self) {
    for (std::size_t p = 0; p < 2; ++p) {
      if (!self.parent_needs_grad(p)) continue;
      auto& g = self.parent_grad(p);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
    }
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  auto x = a.values();
  auto y = b.values();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return make_result("sub", a.shape(), std::move(out), {a, b}, [](Node& self) {
    if (self.parent_needs_grad(0)) {
      auto& g = self.parent_grad(0);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
    }
    if (self.parent_needs_grad(1)) {
      auto& g = self.parent_grad(1);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= self.grad[i];
    }
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  auto x = a.values();
  auto y = b.values();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
  return make_result("mul", a.shape(), std::move(out), {a, b}, [](Node& self) {
    const auto& x = self.parent_value(0);
    const auto& y = self.parent_value(1);
    if (self.parent_needs_grad(0)) {
      auto& g = self.parent_grad(0);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * y[i];
    }
    if (self.parent_needs_grad(1)) {
      auto& g = self.parent_grad(1);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * x[i];
    }
  });
}

Tensor scale(const Tensor& a, double factor) {
  return unary(
      a, "scale", [factor](double x) { return factor * x; },
      [factor](double, double) { return factor; });
}

Tensor tanh(const Tensor& a) {
  return unary(
      a, "tanh",
      [](double x) {
        // one exp instead of libm tanh; near zero 1 - e cancels, so keep libm there
        const double ax = std::abs(x);
        if (ax < 0.25) return std::tanh(x);
        const double e = std::exp(-2.0 * ax);
        return std::copysign((1.0 - e) / (1.0 + e), x);
      },
      [](double y, double) { return 1.0 - y * y; });
}

Tensor sigmoid(const Tensor& a) {
  return unary(
      a, "sigmoid",
      [](double x) {
        if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
        const double e = std::exp(x);
        return e / (1.0 + e);
      },
      [](double y, double) { return y * (1.0 - y); });
}

Tensor leaky_relu(const Tensor& a, double slope) {
  return unary(
      a, "leaky_relu", [slope](double x) { return x > 0 ? x : slope * x; },
      [slope](double, double x) { return x > 0 ? 1.0 : slope; });
}

Tensor sum(const Tensor& a) {
  double acc = 0.0;
  for (double v : a.values()) acc += v;
  return make_result("sum", {}, {acc}, {a}, [](Node& self) {
    if (!self.parent_needs_grad(0)) return;
    auto& g = self.parent_grad(0);
    for (auto& v : g) v += self.grad[0];
  });
}

Tensor mean(const Tensor& a) {
  if (a.size() == 0) throw DimensionError("mean of an empty tensor");
  return scale(sum(a), 1.0 / static_cast<double>(a.size()));
}

Tensor max_rows(const Tensor& m) {
  require_matrix(m, "max_rows");
  const std::size_t r = m.rows(), c = m.cols();
  if (r == 0) throw DimensionError("max_rows of an empty matrix");
  auto v = m.values();
  std::vector<double> out(v.begin(), v.begin() + c);
  std::vector<std::size_t> arg(c, 0);
  for (std::size_t i = 1; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (v[i * c + j] > out[j]) {
        out[j] = v[i * c + j];
        arg[j] = i;
      }
  return make_result("max_rows", {c}, std::move(out), {m}, [c, arg = std::move(arg)](Node& self) {
    if (!self.parent_needs_grad(0)) return;
    auto& g = self.parent_grad(0);
    for (std::size_t j = 0; j < c; ++j) g[arg[j] * c + j] += self.grad[j];
  });
}

Tensor l2_normalize(const Tensor& v) {
  if (!is_vector_like(v) && v.rank() != 0) {
    throw DimensionError("l2_normalize expects a vector, got " + shape_string(v.shape()));
  }
  const std::size_t n = v.size();
  std::vector<double> out(n);
  normalize_block(v.values().data(), out.data(), n);
  return make_result("l2_normalize", v.shape(), std::move(out), {v}, [n](Node& self) {
    if (!self.parent_needs_grad(0)) return;
    normalize_block_backward(self.parent_value(0).data(), self.value.data(), self.grad.data(),
                             self.parent_grad(0).data(), n);
  });
}

Tensor l2_normalize_rows(const Tensor& m) {
  require_matrix(m, "l2_normalize_rows");
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<double> out(r * c);
  const double* in = m.values().data();
  for (std::size_t i = 0; i < r; ++i) normalize_block(in + i * c, out.data() + i * c, c);
  return make_result("l2_normalize_rows", {r, c}, std::move(out), {m}, [r, c](Node& self) {
    if (!self.parent_needs_grad(0)) return;
    const double* x = self.parent_value(0).data();
    double* dx = self.parent_grad(0).data();
    for (std::size_t i = 0; i < r; ++i) {
      normalize_block_backward(x + i * c, self.value.data() + i * c, self.grad.data() + i * c,
                               dx + i * c, c);
    }
  });
}

Tensor softmax(const Tensor& v) {
  if (v.size() == 0) throw DimensionError("softmax of an empty vector");
  if (!is_vector_like(v)) {
    throw DimensionError("softmax expects a vector, got " + shape_string(v.shape()));
  }
  auto x = v.values();
  const double mx = *std::max_element(x.begin(), x.end());
  std::vector<double> out(x.size());
  double z = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) z += (out[i] = std::exp(x[i] - mx));
  for (auto& o : out) o /= z;
  return make_result("softmax", v.shape(), std::move(out), {v}, [](Node& self) {
    if (!self.parent_needs_grad(0)) return;
    const auto& y = self.value;
    double yg = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) yg += y[i] * self.grad[i];
    auto& g = self.parent_grad(0);
    for (std::size_t i = 0; i < y.size(); ++i) g[i] += y[i] * (self.grad[i] - yg);
  });
}

Tensor reshape(const Tensor& a, Shape shape) {
  if (shape_size(shape) != a.size()) {
    throw DimensionError("reshape " + shape_string(a.shape()) + " to " + shape_string(shape));
  }
  std::vector<double> out(a.values().begin(), a.values().end());
  return make_result("reshape", std::move(shape), std::move(out), {a}, [](Node& self) {
    if (!self.parent_needs_grad(0)) return;
    auto& g = self.parent_grad(0);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
  });
}

Tensor concat(std::span<const Tensor> parts) {
  if (parts.empty()) throw UsageError("concat needs at least one part");
  std::vector<double> out;
  std::vector<std::size_t> offsets;
  for (const auto& p : parts) {
    offsets.push_back(out.size());
    out.insert(out.end(), p.values().begin(), p.values().end());
  }
  Shape shape{out.size()};
  return make_result("concat", std::move(shape), std::move(out),
                     std::vector<Tensor>(parts.begin(), parts.end()),
                     [offsets](Node& self) {
                       for (std::size_t p = 0; p < offsets.size(); ++p) {
                         if (!self.parent_needs_grad(p)) continue;
                         auto& g = self.parent_grad(p);
                         for (std::size_t i = 0; i < g.size(); ++i) {
                           g[i] += self.grad[offsets[p] + i];
                         }
                       }
                     });
}

Tensor concat_cols(std::span<const Tensor> parts) {
  if (parts.empty()) throw UsageError("concat_cols needs at least one part");
  const std::size_t r = parts[0].rows();
  std::vector<std::size_t> widths, offsets;
  std::size_t total = 0;
  for (const auto& p : parts) {
    require_matrix(p, "concat_cols");
    if (p.rows() != r) {
      throw DimensionError("concat_cols: row counts differ, " + shape_string(parts[0].shape()) +
                           " vs " + shape_string(p.shape()));
    }
    widths.push_back(p.cols());
    offsets.push_back(total);
    total += p.cols();
  }
  std::vector<double> out(r * total);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    auto v = parts[p].values();
    for (std::size_t i = 0; i < r; ++i) {
      std::copy_n(v.data() + i * widths[p], widths[p], out.data() + i * total + offsets[p]);
    }
  }
  return make_result("concat_cols", {r, total}, std::move(out),
                     std::vector<Tensor>(parts.begin(), parts.end()),
                     [r, total, widths, offsets](Node& self) {
                       for (std::size_t p = 0; p < widths.size(); ++p) {
                         if (!self.parent_needs_grad(p)) continue;
                         auto& g = self.parent_grad(p);
                         for (std::size_t i = 0; i < r; ++i) {
                           const double* src = self.grad.data() + i * total + offsets[p];
                           double* dst = g.data() + i * widths[p];
                           for (std::size_t j = 0; j < widths[p]; ++j) dst[j] += src[j];
                         }
                       }
                     });
}

Tensor row(const Tensor& m, std::size_t r) {
  require_matrix(m, "row");
  if (r >= m.rows()) throw DimensionError("row index out of range");
  const std::size_t c = m.cols();
  std::vector<double> out(m.values().begin() + r * c, m.values().begin() + (r + 1) * c);
  return make_result("row", {c}, std::move(out), {m}, [r, c](Node& self) {
    if (!self.parent_needs_grad(0)) return;
    auto& g = self.parent_grad(0);
    for (std::size_t j = 0; j < c; ++j) g[r * c + j] += self.grad[j];
  });
}

Tensor slice_cols(const Tensor& m, std::size_t begin, std::size_t count) {
  require_matrix(m, "slice_cols");
  const std::size_t r = m.rows(), c = m.cols();
  if (begin + count > c) {
    throw DimensionError("slice_cols [" + std::to_string(begin) + ", " +
                         std::to_string(begin + count) + ") outside " + shape_string(m.shape()));
  }
  auto v = m.values();
  std::vector<double> out(r * count);
  for (std::size_t i = 0; i < r; ++i)
    std::copy_n(v.data() + i * c + begin, count, out.data() + i * count);
  return make_result("slice_cols", {r, count}, std::move(out), {m},
                     [r, c, begin, count](Node& self) {
                       if (!self.parent_needs_grad(0)) return;
                       auto& g = self.parent_grad(0);
                       for (std::size_t i = 0; i < r; ++i)
                         for (std::size_t j = 0; j < count; ++j)
                           g[i * c + begin + j] += self.grad[i * count + j];
                     });
}

Tensor stack_rows(std::span<const Tensor> rows) {
  if (rows.empty()) throw UsageError("stack_rows needs at least one row");
  const std::size_t c = rows[0].size();
  std::vector<double> out;
  out.reserve(rows.size() * c);
  for (const auto& r : rows) {
    if (r.size() != c) throw DimensionError("stack_rows: rows of different length");
    out.insert(out.end(), r.values().begin(), r.values().end());
  }
  return make_result("stack_rows", {rows.size(), c}, std::move(out),
                     std::vector<Tensor>(rows.begin(), rows.end()), [c](Node& self) {
                       for (std::size_t p = 0; p < self.parents.size(); ++p) {
                         if (!self.parent_needs_grad(p)) continue;
                         auto& g = self.parent_grad(p);
                         for (std::size_t j = 0; j < c; ++j) g[j] += self.grad[p * c + j];
                       }
                     });
}

Tensor bce_loss(const Tensor& probabilities, std::span<const double> labels) {
  const std::size_t n = probabilities.size();
  if (n == 0) throw UsageError("bce_loss over an empty edge set");
  if (labels.size() != n) {
    throw DimensionError("bce_loss: " + std::to_string(n) + " probabilities but " +
                         std::to_string(labels.size()) + " labels");
  }
  auto p = probabilities.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = std::clamp(p[i], kProbabilityClamp, 1.0 - kProbabilityClamp);
    acc += labels[i] * std::log(q) + (1.0 - labels[i]) * std::log(1.0 - q);
  }
  std::vector<double> y(labels.begin(), labels.end());
  return make_result("bce_loss", {}, {-acc / static_cast<double>(n)}, {probabilities},
                     [y = std::move(y)](Node& self) {
                       if (!self.parent_needs_grad(0)) return;
                       const auto& p = self.parent_value(0);
                       auto& g = self.parent_grad(0);
                       const double s = -self.grad[0] / static_cast<double>(y.size());
                       for (std::size_t i = 0; i < y.size(); ++i) {
                         if (p[i] < kProbabilityClamp || p[i] > 1.0 - kProbabilityClamp) continue;
                         g[i] += s * (y[i] / p[i] - (1.0 - y[i]) / (1.0 - p[i]));
                       }
                     });
}

Tensor cross_entropy_rows(const Tensor& logits, std::span<const std::size_t> labels) {
  require_matrix(logits, "cross_entropy_rows");
  const std::size_t r = logits.rows(), c = logits.cols();
  if (labels.size() != r) throw DimensionError("cross_entropy_rows: label count differs");
  if (r == 0 || c == 0) throw DimensionError("cross_entropy_rows on an empty matrix");
  auto x = logits.values();
  std::vector<double> probs(r * c);
  double acc = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    if (labels[i] >= c) throw UsageError("cross_entropy_rows: label out of range");
    const double* row = x.data() + i * c;
    const double mx = *std::max_element(row, row + c);
    double z = 0.0;
    for (std::size_t j = 0; j < c; ++j) z += (probs[i * c + j] = std::exp(row[j] - mx));
    for (std::size_t j = 0; j < c; ++j) probs[i * c + j] /= z;
    acc += -(row[labels[i]] - mx - std::log(z));
  }
  std::vector<std::size_t> y(labels.begin(), labels.end());
  return make_result("cross_entropy_rows", {}, {acc / static_cast<double>(r)}, {logits},
                     [r, c, probs = std::move(probs), y = std::move(y)](Node& self) {
                       if (!self.parent_needs_grad(0)) return;
                       auto& g = self.parent_grad(0);
                       const double s = self.grad[0] / static_cast<double>(r);
                       for (std::size_t i = 0; i < r; ++i) {
                         for (std::size_t j = 0; j < c; ++j) {
                           g[i * c + j] += s * (probs[i * c + j] - (j == y[i] ? 1.0 : 0.0));
                         }
                       }
                     });
}

}  // namespace dines
