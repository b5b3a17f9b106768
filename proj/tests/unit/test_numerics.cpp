#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "dines/adam.hpp"
#include "dines/error.hpp"
#include "dines/graph_ops.hpp"
#include "dines/ops.hpp"

using namespace dines;
using oracle::check_gradients;
using oracle::project;
using oracle::random_matrix;
using oracle::random_vector;

namespace {

constexpr int kTrials = 100;
constexpr double kTol = 1e-4;

// Runs `kTrials` gradient checks; `make` builds fresh leaves and the scalar.
template <typename Make>
void gradient_property(const char* name, Make make) {
  std::mt19937_64 rng(std::hash<std::string>{}(name));
  double worst = 0.0;
  std::string where;
  for (int t = 0; t < kTrials; ++t) {
    auto [leaves, fn] = make(rng);
    const auto r = check_gradients(fn, leaves);
    if (r.max_rel > worst) {
      worst = r.max_rel;
      where = r.worst;
    }
  }
  INFO(name << " worst " << where);
  CHECK(worst < kTol);
}

using Leaves = std::vector<Tensor>;
using Fn = std::function<Tensor()>;

std::pair<Leaves, Fn> unary_case(std::mt19937_64& rng, Tensor (*op)(const Tensor&)) {
  auto a = random_matrix(3, 4, rng);
  return {{a}, [a, op] { return project(op(a)); }};
}

AdjacencyPtr random_adjacency(std::size_t n, std::mt19937_64& rng) {
  auto adj = std::make_shared<Adjacency>();
  adj->offsets.push_back(0);
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_int_distribution<std::uint32_t> node(0, static_cast<std::uint32_t>(n - 1));
  for (std::size_t u = 0; u < n; ++u) {
    const int d = deg(rng);
    for (int i = 0; i < d; ++i) adj->targets.push_back(node(rng));
    adj->offsets.push_back(adj->targets.size());
  }
  return adj;
}

}  // namespace

TEST_CASE("matmul examples") {
  const auto i2 = Tensor::matrix(2, 2, {1, 0, 0, 1});
  const auto m = Tensor::matrix(2, 2, {1, 2, 3, 4});
  const auto p = matmul(i2, m);
  CHECK(std::vector<double>(p.values().begin(), p.values().end()) ==
        std::vector<double>{1, 2, 3, 4});
  CHECK(matmul(Tensor::matrix(1, 2, {1, 0}), Tensor::matrix(2, 1, {0, 5})).item() == 0.0);
  CHECK_THROWS_AS(matmul(Tensor::matrix(2, 3, std::vector<double>(6)), m), DimensionError);
  try {
    matmul(Tensor::matrix(2, 3, std::vector<double>(6)), m);
  } catch (const DimensionError& e) {
    CHECK(std::string(e.what()).find("[2, 3]") != std::string::npos);
    CHECK(std::string(e.what()).find("[2, 2]") != std::string::npos);
  }
}

TEST_CASE("matmul gradient of sum is column sums of b") {
  std::mt19937_64 rng(3);
  auto a = random_matrix(3, 4, rng);
  auto b = random_matrix(4, 2, rng, false);
  sum(matmul(a, b)).backward();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(a.grad()[i * 4 + k] == doctest::Approx(b.at(k, 0) + b.at(k, 1)).epsilon(1e-12));
  const auto r = check_gradients([&] { return sum(matmul(a, b)); }, {a});
  CHECK(r.max_rel < 1e-6);
}

TEST_CASE("elementwise examples") {
  CHECK(tanh(Tensor::scalar(0.0)).item() == 0.0);
  CHECK(sigmoid(Tensor::scalar(0.0)).item() == 0.5);
  CHECK(leaky_relu(Tensor::scalar(-1.0)).item() == doctest::Approx(-0.01).epsilon(1e-15));
  CHECK_THROWS_AS(add(Tensor::vector({1, 2}), Tensor::vector({1, 2, 3})), DimensionError);
  CHECK_THROWS_AS(mul(Tensor::vector({1, 2}), Tensor::vector({1})), DimensionError);
  auto x = Tensor::scalar(0.3, true);
  const auto r = check_gradients([&] { return tanh(x); }, {x});
  CHECK(r.max_rel < 1e-6);
  CHECK(sigmoid(Tensor::scalar(-800.0)).item() >= 0.0);
}

TEST_CASE("l2_normalize examples") {
  auto v = l2_normalize(Tensor::vector({1, 0, 0}));
  CHECK(v.at(0) == 1.0);
  auto w = l2_normalize(Tensor::vector({3, 4}));
  CHECK(w.at(0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(w.at(1) == doctest::Approx(0.8).epsilon(1e-15));
  auto z = l2_normalize(Tensor::vector({0, 0}));
  CHECK(z.at(0) == 0.0);
  CHECK(z.at(1) == 0.0);
}

TEST_CASE("softmax examples") {
  auto s = softmax(Tensor::vector({7, 7}));
  CHECK(s.at(0) == 0.5);
  auto t = softmax(Tensor::vector({std::log(1.0), std::log(3.0)}));
  CHECK(t.at(0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(t.at(1) == doctest::Approx(0.75).epsilon(1e-14));
  auto big = softmax(Tensor::vector({1000, 0}));
  CHECK(big.at(0) == doctest::Approx(1.0));
  CHECK(big.at(1) >= 0.0);
  CHECK_THROWS_AS(softmax(Tensor::vector({})), DimensionError);
}

TEST_CASE("concat examples and gradient round trip") {
  auto a = Tensor::vector({1}, true);
  auto b = Tensor::vector({2, 3}, true);
  const Tensor parts[] = {a, b};
  auto c = concat(parts);
  CHECK(std::vector<double>(c.values().begin(), c.values().end()) == std::vector<double>{1, 2, 3});
  sum(c).backward();
  CHECK(a.grad()[0] == 1.0);
  CHECK(b.grad()[0] == 1.0);
  CHECK(b.grad()[1] == 1.0);
  const Tensor single[] = {b};
  auto s = concat(single);
  CHECK(s.at(1) == 3.0);
}

TEST_CASE("non-finite values fail at the producing op") {
  try {
    scale(Tensor::vector({1e308}), 1e10);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("scale") != std::string::npos);
  }
}

TEST_CASE("gradients accumulate across uses") {
  auto x = Tensor::vector({1.5, -0.5}, true);
  sum(add(x, x)).backward();
  CHECK(x.grad()[0] == 2.0);
  sum(x).backward();
  CHECK(x.grad()[0] == 3.0);
  x.zero_grad();
  CHECK_FALSE(x.has_grad());
}

TEST_CASE("property: op gradients match finite differences") {
  gradient_property("matmul", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(3, 4, rng), b = random_matrix(4, 2, rng);
    return {{a, b}, [a, b] { return project(matmul(a, b)); }};
  });
  gradient_property("transpose", [](std::mt19937_64& rng) {
    return unary_case(rng, &transpose);
  });
  gradient_property("add_row", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(3, 4, rng), b = random_vector(4, rng);
    return {{a, b}, [a, b] { return project(add_row(a, b)); }};
  });
  gradient_property("dot", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_vector(5, rng), b = random_vector(5, rng);
    return {{a, b}, [a, b] { return dot(a, b); }};
  });
  gradient_property("add", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(2, 3, rng), b = random_matrix(2, 3, rng);
    return {{a, b}, [a, b] { return project(add(a, b)); }};
  });
  gradient_property("sub", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(2, 3, rng), b = random_matrix(2, 3, rng);
    return {{a, b}, [a, b] { return project(sub(a, b)); }};
  });
  gradient_property("mul", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(2, 3, rng), b = random_matrix(2, 3, rng);
    return {{a, b}, [a, b] { return project(mul(a, b)); }};
  });
  gradient_property("scale", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(2, 3, rng);
    return {{a}, [a] { return project(scale(a, -1.7)); }};
  });
  gradient_property("tanh", [](std::mt19937_64& rng) { return unary_case(rng, &tanh); });
  gradient_property("sigmoid", [](std::mt19937_64& rng) { return unary_case(rng, &sigmoid); });
  gradient_property("leaky_relu", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(3, 4, rng);
    // keep entries off the kink
    for (auto& v : a.mutable_values())
      if (std::abs(v) < 1e-3) v = 0.5;
    return {{a}, [a] { return project(leaky_relu(a)); }};
  });
  gradient_property("sum", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(3, 3, rng);
    return {{a}, [a] { return sum(mul(a, a)); }};
  });
  gradient_property("mean", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(3, 3, rng);
    return {{a}, [a] { return mean(mul(a, a)); }};
  });
  gradient_property("max_rows", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(4, 3, rng);
    return {{a}, [a] { return project(max_rows(a)); }};
  });
  gradient_property("l2_normalize", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_vector(5, rng);
    return {{a}, [a] { return project(l2_normalize(a)); }};
  });
  gradient_property("l2_normalize_rows", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(3, 4, rng);
    return {{a}, [a] { return project(l2_normalize_rows(a)); }};
  });
  gradient_property("softmax", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_vector(5, rng);
    return {{a}, [a] { return project(softmax(a)); }};
  });
  gradient_property("reshape", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(2, 3, rng);
    return {{a}, [a] { return project(tanh(reshape(a, {3, 2}))); }};
  });
  gradient_property("concat", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_vector(2, rng), b = random_vector(3, rng);
    return {{a, b}, [a, b] {
              const Tensor parts[] = {a, b, a};
              return project(tanh(concat(parts)));
            }};
  });
  gradient_property("concat_cols", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(3, 2, rng), b = random_matrix(3, 1, rng);
    return {{a, b}, [a, b] {
              const Tensor parts[] = {a, b};
              return project(tanh(concat_cols(parts)));
            }};
  });
  gradient_property("row", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(3, 4, rng);
    return {{a}, [a] { return project(tanh(row(a, 1))); }};
  });
  gradient_property("slice_cols", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_matrix(3, 4, rng);
    return {{a}, [a] { return project(tanh(slice_cols(a, 1, 2))); }};
  });
  gradient_property("stack_rows", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto a = random_vector(3, rng), b = random_vector(3, rng);
    return {{a, b}, [a, b] {
              const Tensor rows[] = {a, b};
              return project(tanh(stack_rows(rows)));
            }};
  });
  gradient_property("bce_loss", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto logits = random_vector(6, rng);
    std::vector<double> y{1, 0, 1, 1, 0, 0};
    return {{logits}, [logits, y] { return bce_loss(sigmoid(logits), y); }};
  });
  gradient_property("cross_entropy_rows", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto logits = random_matrix(4, 3, rng);
    std::vector<std::size_t> y{0, 2, 1, 2};
    return {{logits}, [logits, y] { return cross_entropy_rows(logits, y); }};
  });
  gradient_property("neighbor_sum", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto x = random_matrix(6, 3, rng);
    auto adj = random_adjacency(6, rng);
    return {{x}, [x, adj] { return project(neighbor_sum(x, adj)); }};
  });
  gradient_property("neighbor_mean", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto x = random_matrix(6, 3, rng);
    auto adj = random_adjacency(6, rng);
    return {{x}, [x, adj] { return project(neighbor_mean(x, adj)); }};
  });
  gradient_property("neighbor_max", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto x = random_matrix(6, 3, rng);
    auto adj = random_adjacency(6, rng);
    return {{x}, [x, adj] { return project(neighbor_max(x, adj)); }};
  });
  gradient_property("neighbor_attention", [](std::mt19937_64& rng) -> std::pair<Leaves, Fn> {
    auto x = random_matrix(6, 3, rng);
    auto p = random_matrix(6, 1, rng), q = random_matrix(6, 1, rng);
    auto adj = random_adjacency(6, rng);
    return {{x, p, q}, [x, p, q, adj] { return project(neighbor_attention(x, p, q, adj)); }};
  });
}

TEST_CASE("property: composed chain matches finite differences") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < kTrials; ++t) {
    auto x = random_matrix(4, 3, rng), w = random_matrix(3, 5, rng), b = random_vector(5, rng);
    auto f = [&] {
      return project(l2_normalize_rows(tanh(add_row(matmul(x, w), b))));
    };
    const auto r = check_gradients(f, {x, w, b});
    REQUIRE(r.max_rel < kTol);
  }
}

TEST_CASE("property: softmax and normalization invariants") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto v = oracle::uniform(1 + t % 9, rng, -50, 50);
    auto s = softmax(Tensor::vector(v));
    double total = 0.0;
    for (double x : s.values()) {
      CHECK(x >= 0.0);
      total += x;
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
    auto n = l2_normalize(Tensor::vector(v));
    double sq = 0.0;
    for (double x : n.values()) sq += x * x;
    CHECK(std::abs(std::sqrt(sq) - 1.0) < 1e-9);
  }
}

TEST_CASE("property: batched neighbor kernels equal per-node reductions") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t n = 7, c = 3;
    auto x = random_matrix(n, c, rng, false);
    auto adj = random_adjacency(n, rng);
    auto s = neighbor_sum(x, adj);
    auto m = neighbor_mean(x, adj);
    auto mx = neighbor_max(x, adj);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t j = 0; j < c; ++j) {
        double acc = 0.0, best = -1e300;
        for (std::size_t e = adj->offsets[u]; e < adj->offsets[u + 1]; ++e) {
          acc += x.at(adj->targets[e], j);
          best = std::max(best, x.at(adj->targets[e], j));
        }
        const auto deg = adj->degree(u);
        CHECK(s.at(u, j) == doctest::Approx(acc).epsilon(1e-14));
        CHECK(m.at(u, j) == doctest::Approx(deg ? acc / deg : 0.0).epsilon(1e-14));
        CHECK(mx.at(u, j) == (deg ? best : 0.0));
      }
    }
  }
}

TEST_CASE("attention weights are a distribution per node") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < kTrials; ++t) {
    auto x = random_matrix(8, 2, rng, false);
    auto adj = random_adjacency(8, rng);
    std::vector<double> w;
    neighbor_attention(x, random_matrix(8, 1, rng, false), random_matrix(8, 1, rng, false), adj,
                       &w);
    REQUIRE(w.size() == adj->targets.size());
    for (std::size_t u = 0; u < 8; ++u) {
      if (adj->degree(u) == 0) continue;
      double total = 0.0;
      for (std::size_t e = adj->offsets[u]; e < adj->offsets[u + 1]; ++e) {
        CHECK(w[e] >= 0.0);
        total += w[e];
      }
      CHECK(std::abs(total - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("adam examples") {
  auto p = Tensor::vector({1.0}, true);
  p.mutable_grad()[0] = 0.5;
  auto st = AdamState::for_param(p);
  adam_step(p, st, 0.01, 0.0);
  CHECK(p.at(0) == doctest::Approx(0.99).epsilon(1e-7));
  CHECK(st.step == 1);

  auto q = Tensor::vector({2.0, -3.0}, true);
  q.mutable_grad();
  auto sq = AdamState::for_param(q);
  adam_step(q, sq, 0.01, 0.0);
  CHECK(q.at(0) == 2.0);
  CHECK(q.at(1) == -3.0);

  auto r = Tensor::vector({2.0}, true);
  r.mutable_grad();
  auto sr = AdamState::for_param(r);
  adam_step(r, sr, 0.1, 0.5);
  CHECK(r.at(0) == doctest::Approx(2.0 * (1 - 0.05)).epsilon(1e-12));

  auto none = Tensor::vector({1.0}, true);
  auto sn = AdamState::for_param(none);
  CHECK_THROWS_AS(adam_step(none, sn, 0.01, 0.0), UsageError);
}

TEST_CASE("adam matches a hand-rolled two-step trajectory") {
  auto p = Tensor::vector({0.3}, true);
  auto st = AdamState::for_param(p);
  double x = 0.3, m = 0, v = 0;
  const double lr = 0.05, wd = 0.01;
  for (int t = 1; t <= 5; ++t) {
    p.zero_grad();
    const double g = 2 * p.at(0) - 1;  // d/dx (x^2 - x)
    p.mutable_grad()[0] = g;
    adam_step(p, st, lr, wd);
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    const double mh = m / (1 - std::pow(0.9, t)), vh = v / (1 - std::pow(0.999, t));
    x -= lr * wd * x;
    x -= lr * mh / (std::sqrt(vh) + 1e-8);
    CHECK(p.at(0) == doctest::Approx(x).epsilon(1e-12));
  }
}
