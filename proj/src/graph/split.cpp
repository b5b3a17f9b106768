#include "dines/split.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include <json.hpp>

#include "dines/edge_list.hpp"
#include "dines/error.hpp"

namespace dines {

EdgeSplit split_edges(const SignedDigraph& g, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw UsageError("split ratio must lie in (0, 1), got " + std::to_string(ratio));
  }
  const std::size_t m = g.edge_count();
  if (m < 10) throw UsageError("split_edges needs at least 10 edges");
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto train_count = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(m)));

  EdgeSplit split;
  split.seed = seed;
  split.ratio = ratio;
  split.train.reserve(train_count);
  split.test.reserve(m - train_count);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < m; ++i) {
    (i < train_count ? split.train : split.test).push_back(edges[order[i]]);
  }
  return split;
}

void write_split(const std::filesystem::path& dir, std::size_t node_count, const EdgeSplit& split) {
  std::filesystem::create_directories(dir);
  save_edge_list(dir / "train.tsv", node_count, split.train);
  save_edge_list(dir / "test.tsv", node_count, split.test);
  nlohmann::json meta = {
      {"seed", split.seed},
      {"ratio", split.ratio},
      {"nodes", node_count},
      {"counts", {{"train", split.train.size()}, {"test", split.test.size()}}},
  };
  std::ofstream out(dir / "split.json");
  if (!out) throw UsageError("cannot write " + (dir / "split.json").string());
  out << meta.dump(2) << '\n';
}

StoredSplit read_split(const std::filesystem::path& dir) {
  std::ifstream meta_in(dir / "split.json");
  if (!meta_in) throw UsageError("missing " + (dir / "split.json").string());
  const auto meta = nlohmann::json::parse(meta_in);
  StoredSplit out;
  out.node_count = meta.at("nodes").get<std::size_t>();
  out.split.seed = meta.at("seed").get<std::uint64_t>();
  out.split.ratio = meta.at("ratio").get<double>();
  auto train = load_edge_list(dir / "train.tsv", EdgeListFormat::Canonical);
  auto test = load_edge_list(dir / "test.tsv", EdgeListFormat::Canonical);
  if (train.graph.node_count() > out.node_count || test.graph.node_count() > out.node_count) {
    throw UsageError("split files reference nodes beyond the recorded node count");
  }
  out.split.train.assign(train.graph.edges().begin(), train.graph.edges().end());
  out.split.test.assign(test.graph.edges().begin(), test.graph.edges().end());
  if (out.split.train.size() != meta.at("counts").at("train").get<std::size_t>() ||
      out.split.test.size() != meta.at("counts").at("test").get<std::size_t>()) {
    throw UsageError("split.json counts do not match train.tsv/test.tsv");
  }
  return out;
}

}  // namespace dines
