#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dines/graph.hpp"
#include "dines/ops.hpp"
#include "dines/tensor.hpp"

namespace oracle {

using dines::Tensor;

struct GradReport {
  double max_rel = 0.0;
  std::string worst;  // "leaf[i]" of the worst entry
};

/// Compares reverse-mode gradients of the scalar `f()` against central
/// differences for every entry of every leaf. Relative error uses
/// max(|a|, |b|, floor) as the denominator.
inline GradReport check_gradients(const std::function<Tensor()>& f, std::vector<Tensor> leaves,
                                  double h = 1e-6, double floor = 1e-5) {
  for (auto& l : leaves) l.zero_grad();
  f().backward();
  std::vector<std::vector<double>> analytic;
  for (auto& l : leaves) {
    if (l.has_grad()) analytic.emplace_back(l.grad().begin(), l.grad().end());
    else analytic.emplace_back(l.size(), 0.0);
  }
  GradReport r;
  for (std::size_t p = 0; p < leaves.size(); ++p) {
    auto v = leaves[p].mutable_values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double saved = v[i];
      v[i] = saved + h;
      const double up = f().item();
      v[i] = saved - h;
      const double down = f().item();
      v[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double a = analytic[p][i];
      const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), floor});
      if (rel > r.max_rel) {
        r.max_rel = rel;
        r.worst = "leaf" + std::to_string(p) + "[" + std::to_string(i) + "] analytic " +
                  std::to_string(a) + " numeric " + std::to_string(numeric);
      }
    }
  }
  return r;
}

inline std::vector<double> uniform(std::size_t n, std::mt19937_64& rng, double lo = -2.0,
                                   double hi = 2.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline Tensor random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng,
                            bool grad = true) {
  return Tensor::matrix(r, c, uniform(r * c, rng), grad);
}

inline Tensor random_vector(std::size_t n, std::mt19937_64& rng, bool grad = true) {
  return Tensor::vector(uniform(n, rng), grad);
}

/// Reduces any tensor to a scalar through fixed random weights, so every
/// output entry contributes a distinct gradient.
inline Tensor project(const Tensor& t, std::uint64_t seed = 99) {
  std::mt19937_64 rng(seed);
  return dines::dot(t, Tensor::from_values(t.shape(), uniform(t.size(), rng)));
}

/// Random signed digraph with m distinct non-loop edges.
inline dines::SignedDigraph random_digraph(std::size_t n, std::size_t m, std::mt19937_64& rng,
                                           double positive = 0.7) {
  std::uniform_int_distribution<std::uint32_t> node(0, static_cast<std::uint32_t>(n - 1));
  std::bernoulli_distribution sign(positive);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::vector<dines::SignedEdge> edges;
  while (edges.size() < m) {
    const auto u = node(rng), v = node(rng);
    if (u == v || !seen.insert({u, v}).second) continue;
    edges.push_back({u, v, static_cast<std::int8_t>(sign(rng) ? 1 : -1)});
  }
  return dines::SignedDigraph::from_edges(n, std::move(edges));
}

/// One-sided Jacobi SVD of a dense row-major r x c matrix; returns the
/// singular values in non-increasing order.
inline std::vector<double> jacobi_singular_values(std::vector<double> a, std::size_t r,
                                                  std::size_t c) {
  // Work on columns of A; rotate pairs until all are mutually orthogonal.
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < c; ++p) {
      for (std::size_t q = p + 1; q < c; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
          alpha += a[i * c + p] * a[i * c + p];
          beta += a[i * c + q] * a[i * c + q];
          gamma += a[i * c + p] * a[i * c + q];
        }
        if (gamma == 0.0) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::size_t i = 0; i < r; ++i) {
          const double x = a[i * c + p], y = a[i * c + q];
          a[i * c + p] = cs * x - sn * y;
          a[i * c + q] = sn * x + cs * y;
        }
      }
    }
    if (off < 1e-15) break;
  }
  std::vector<double> s(c);
  for (std::size_t j = 0; j < c; ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < r; ++i) sq += a[i * c + j] * a[i * c + j];
    s[j] = std::sqrt(sq);
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace oracle
