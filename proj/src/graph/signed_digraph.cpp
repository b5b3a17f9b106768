#include <algorithm>
#include <string>
#include <unordered_set>

#include "dines/error.hpp"
#include "dines/graph.hpp"

namespace dines {

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::OutPositive: return "out+";
    case Direction::OutNegative: return "out-";
    case Direction::InPositive: return "in+";
    case Direction::InNegative: return "in-";
  }
  return "?";
}

SignedDigraph SignedDigraph::from_edges(std::size_t n, std::vector<SignedEdge> edges) {
  if (n > UINT32_MAX) throw UsageError("too many nodes");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  std::size_t positive = 0;
  for (const auto& e : edges) {
    if (e.src >= n || e.dst >= n) {
      throw UsageError("edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                       ") outside node range " + std::to_string(n));
    }
    if (e.src == e.dst) throw UsageError("self-loop at node " + std::to_string(e.src));
    if (e.sign != 1 && e.sign != -1) throw UsageError("edge sign must be +1 or -1");
    if (!seen.insert((std::uint64_t{e.src} << 32) | e.dst).second) {
      throw UsageError("duplicate edge (" + std::to_string(e.src) + ", " +
                       std::to_string(e.dst) + ")");
    }
    if (e.sign > 0) ++positive;
  }

  std::array<std::vector<std::size_t>, 4> counts;
  for (auto& c : counts) c.assign(n + 1, 0);
  auto slot = [](bool out, bool pos) {
    return static_cast<std::size_t>(out ? (pos ? Direction::OutPositive : Direction::OutNegative)
                                        : (pos ? Direction::InPositive : Direction::InNegative));
  };
  for (const auto& e : edges) {
    ++counts[slot(true, e.positive())][e.src + 1];
    ++counts[slot(false, e.positive())][e.dst + 1];
  }
  std::array<Adjacency, 4> adj;
  for (std::size_t d = 0; d < 4; ++d) {
    for (std::size_t u = 0; u < n; ++u) counts[d][u + 1] += counts[d][u];
    adj[d].offsets = counts[d];
    adj[d].targets.resize(counts[d][n]);
  }
  std::array<std::vector<std::size_t>, 4> cursor;
  for (std::size_t d = 0; d < 4; ++d) cursor[d].assign(adj[d].offsets.begin(), adj[d].offsets.end() - 1);
  for (const auto& e : edges) {
    const auto o = slot(true, e.positive());
    adj[o].targets[cursor[o][e.src]++] = e.dst;
    const auto i = slot(false, e.positive());
    adj[i].targets[cursor[i][e.dst]++] = e.src;
  }

  SignedDigraph g;
  g.n_ = n;
  g.positive_ = positive;
  g.edges_ = std::move(edges);
  for (std::size_t d = 0; d < 4; ++d) {
    g.adjacency_[d] = std::make_shared<const Adjacency>(std::move(adj[d]));
  }
  return g;
}

double SignedDigraph::positive_ratio() const {
  if (edges_.empty()) return 0.0;
  return static_cast<double>(positive_) / static_cast<double>(edges_.size());
}

std::span<const std::uint32_t> SignedDigraph::neighbors(std::uint32_t u, Direction d) const {
  const auto& a = *adjacency(d);
  return std::span<const std::uint32_t>(a.targets).subspan(a.offsets[u], a.degree(u));
}

std::size_t SignedDigraph::degree(std::uint32_t u, Direction d) const {
  return adjacency(d)->degree(u);
}

SignedDigraph subgraph_prefix(const SignedDigraph& g, std::size_t edge_limit) {
  if (edge_limit == 0 || edge_limit > g.edge_count()) {
    throw UsageError("subgraph_prefix: edge limit " + std::to_string(edge_limit) +
                     " outside (0, " + std::to_string(g.edge_count()) + "]");
  }
  // An edge survives threshold t iff max(src, dst) < t.
  std::vector<std::uint32_t> keys;
  keys.reserve(g.edge_count());
  for (const auto& e : g.edges()) keys.push_back(std::max(e.src, e.dst) + 1);
  std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(edge_limit - 1),
                   keys.end());
  const std::uint32_t threshold = keys[edge_limit - 1];
  std::vector<SignedEdge> kept;
  for (const auto& e : g.edges()) {
    if (std::max(e.src, e.dst) < threshold) kept.push_back(e);
  }
  return SignedDigraph::from_edges(threshold, std::move(kept));
}

}  // namespace dines
