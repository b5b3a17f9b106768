#include "dines/synthetic.hpp"

#include <random>
#include <string>
#include <unordered_set>

#include "dines/error.hpp"

namespace dines {

SignedDigraph generate_synthetic(const SyntheticSpec& spec) {
  const std::size_t n = spec.nodes;
  const std::size_t m = spec.edges;
  if (n < 2) throw UsageError("synthetic graph needs at least 2 nodes");
  if (m < n) throw UsageError("synthetic graph needs edges >= nodes");
  if (static_cast<double>(m) > static_cast<double>(n) * static_cast<double>(n - 1)) {
    throw UsageError("infeasible density: " + std::to_string(m) + " edges on " +
                     std::to_string(n) + " nodes");
  }
  if (!(spec.positive_ratio >= 0.0 && spec.positive_ratio <= 1.0)) {
    throw UsageError("positive_ratio must lie in [0, 1]");
  }
  if (!(spec.power_law_skew >= 0.25 && spec.power_law_skew < 1.0)) {
    throw UsageError("power_law_skew must lie in [0.25, 1)");
  }

  int levels = 0;
  while ((std::size_t{1} << levels) < n) ++levels;
  const double a = spec.power_law_skew;
  const double rest = (1.0 - a) / 3.0;

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  std::vector<SignedEdge> edges;
  edges.reserve(m);

  const std::size_t max_attempts = 64 * m + 4096;
  std::size_t attempts = 0;
  while (edges.size() < m) {
    if (++attempts > max_attempts) {
      throw UsageError("could not place " + std::to_string(m) +
                       " distinct edges; lower the skew or the density");
    }
    std::uint64_t u = 0, v = 0;
    for (int level = 0; level < levels; ++level) {
      const double r = unit(rng);
      u <<= 1;
      v <<= 1;
      if (r < a) {
      } else if (r < a + rest) {
        v |= 1;
      } else if (r < a + 2 * rest) {
        u |= 1;
      } else {
        u |= 1;
        v |= 1;
      }
    }
    if (u >= n || v >= n || u == v) continue;
    if (!seen.insert((u << 32) | v).second) continue;
    const bool positive = unit(rng) < spec.positive_ratio;
    edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v),
                     static_cast<std::int8_t>(positive ? 1 : -1)});
  }
  return SignedDigraph::from_edges(n, std::move(edges));
}

}  // namespace dines
