#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "../support/oracles.hpp"
#include "dines/edge_list.hpp"
#include "dines/error.hpp"
#include "dines/graph.hpp"
#include "dines/split.hpp"
#include "dines/synthetic.hpp"

using namespace dines;
namespace fs = std::filesystem;

namespace {

LoadedGraph parse(const std::string& text, EdgeListFormat f) {
  std::istringstream in(text);
  return read_edge_list(in, f);
}

std::vector<std::uint32_t> list(const SignedDigraph& g, std::uint32_t u, Direction d) {
  auto s = g.neighbors(u, d);
  return {s.begin(), s.end()};
}

fs::path temp_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("dines_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("toy triple file collapses the duplicate and indexes neighbors") {
  const auto g = parse("0 1 +1\n1 0 -1\n0 1 +1\n", EdgeListFormat::Triple);
  CHECK(g.graph.edge_count() == 2);
  CHECK(g.report.duplicates_collapsed == 1);
  CHECK(list(g.graph, 0, Direction::OutPositive) == std::vector<std::uint32_t>{1});
  CHECK(list(g.graph, 0, Direction::InNegative) == std::vector<std::uint32_t>{1});
  CHECK(list(g.graph, 1, Direction::InPositive) == std::vector<std::uint32_t>{0});
  CHECK(list(g.graph, 1, Direction::OutNegative) == std::vector<std::uint32_t>{0});
}

TEST_CASE("last duplicate sign wins") {
  const auto g = parse("5 7 1\n7 9 1\n5 7 -3\n", EdgeListFormat::Triple);
  REQUIRE(g.graph.edge_count() == 2);
  CHECK(g.graph.edges()[0].sign == -1);
  CHECK(g.graph.edges()[0].src == 0);
  CHECK(g.graph.edges()[0].dst == 1);
}

TEST_CASE("unparseable records name their line") {
  try {
    parse("a b c\n", EdgeListFormat::Triple);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  try {
    parse("# header\n1 2 1\n3 x 1\n", EdgeListFormat::Triple);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("", EdgeListFormat::Triple), ParseError);
  CHECK_THROWS_AS(parse("# only comments\n", EdgeListFormat::Canonical), ParseError);
  CHECK_THROWS_AS(parse("0\t1\t2\n", EdgeListFormat::Canonical), ParseError);
}

TEST_CASE("bitcoin csv: positive ratings are +, everything else -") {
  const auto g = parse("10,20,5,1\n20,30,-2,2\n30,10,0,3\n10,10,4,4\n",
                       EdgeListFormat::BitcoinCsv);
  CHECK(g.graph.node_count() == 3);
  CHECK(g.graph.edge_count() == 3);
  CHECK(g.graph.positive_count() == 1);
  CHECK(g.report.self_loops_dropped == 1);
  CHECK(g.original_ids == std::vector<std::int64_t>{10, 20, 30});
}

TEST_CASE("triple format drops neutral weights and comments") {
  const auto g = parse("% konect header\n# snap header\n1 2 1\n2 3 0\n3 1 -1\n",
                       EdgeListFormat::Triple);
  CHECK(g.graph.edge_count() == 2);
  CHECK(g.report.neutral_dropped == 1);
}

TEST_CASE("canonical ids are kept and the node header is honored") {
  const auto g = parse("# nodes: 6\n0\t4\t1\n4\t2\t-1\n", EdgeListFormat::Canonical);
  CHECK(g.graph.node_count() == 6);
  CHECK(g.graph.edges()[0].dst == 4);
}

TEST_CASE("property: neighbor index consistency on random graphs") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + t % 17;
    const std::size_t m = std::min<std::size_t>(n * (n - 1), 1 + t * 3 % 60);
    const auto g = oracle::random_digraph(n, m, rng);
    std::size_t total = 0;
    for (std::uint32_t u = 0; u < n; ++u)
      for (auto d : kDirections) total += g.degree(u, d);
    CHECK(total == 2 * m);
    for (const auto& e : g.edges()) {
      const auto out = e.positive() ? Direction::OutPositive : Direction::OutNegative;
      const auto in = e.positive() ? Direction::InPositive : Direction::InNegative;
      const auto a = list(g, e.src, out);
      const auto b = list(g, e.dst, in);
      CHECK(std::count(a.begin(), a.end(), e.dst) == 1);
      CHECK(std::count(b.begin(), b.end(), e.src) == 1);
    }
  }
}

TEST_CASE("property: canonical round trip is idempotent") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto g = oracle::random_digraph(12, 30, rng);
    std::ostringstream out;
    write_edge_list(out, g.node_count(), g.edges());
    const auto back = parse(out.str(), EdgeListFormat::Canonical).graph;
    CHECK(back == g);
  }
}

TEST_CASE("from_edges rejects invalid graphs") {
  CHECK_THROWS_AS(SignedDigraph::from_edges(2, {{0, 2, 1}}), UsageError);
  CHECK_THROWS_AS(SignedDigraph::from_edges(2, {{1, 1, 1}}), UsageError);
  CHECK_THROWS_AS(SignedDigraph::from_edges(2, {{0, 1, 1}, {0, 1, -1}}), UsageError);
  CHECK_THROWS_AS(SignedDigraph::from_edges(2, {{0, 1, 0}}), UsageError);
}

TEST_CASE("split sizes, determinism and disjoint union") {
  std::mt19937_64 rng(3);
  const auto g10 = oracle::random_digraph(6, 10, rng);
  const auto s = split_edges(g10, 0.8, 0);
  CHECK(s.train.size() == 8);
  CHECK(s.test.size() == 2);
  CHECK_THROWS_AS(split_edges(g10, 1.0, 0), UsageError);
  CHECK_THROWS_AS(split_edges(g10, 0.0, 0), UsageError);
  CHECK_THROWS_AS(split_edges(oracle::random_digraph(5, 9, rng), 0.8, 0), UsageError);

  const auto g = oracle::random_digraph(60, 400, rng);
  std::vector<std::vector<SignedEdge>> tests;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = split_edges(g, 0.8, seed);
    const auto b = split_edges(g, 0.8, seed);
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);
    CHECK(a.train.size() == 320);
    auto all = a.train;
    all.insert(all.end(), a.test.begin(), a.test.end());
    auto key = [](const SignedEdge& e) { return std::pair(e.src, e.dst); };
    std::sort(all.begin(), all.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    auto orig = std::vector<SignedEdge>(g.edges().begin(), g.edges().end());
    std::sort(orig.begin(), orig.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    CHECK(all == orig);
    tests.push_back(a.test);
  }
  for (std::size_t i = 0; i < tests.size(); ++i)
    for (std::size_t j = i + 1; j < tests.size(); ++j) CHECK(tests[i] != tests[j]);
}

TEST_CASE("split files round trip byte for byte") {
  std::mt19937_64 rng(4);
  const auto g = oracle::random_digraph(30, 120, rng);
  const auto a = temp_dir("split_a"), b = temp_dir("split_b");
  write_split(a, g.node_count(), split_edges(g, 0.8, 7));
  write_split(b, g.node_count(), split_edges(g, 0.8, 7));
  for (const char* f : {"train.tsv", "test.tsv", "split.json"}) CHECK(slurp(a / f) == slurp(b / f));
  const auto back = read_split(a);
  CHECK(back.node_count == 30);
  CHECK(back.split.train == split_edges(g, 0.8, 7).train);
  CHECK(back.split.seed == 7);
}

TEST_CASE("synthetic generator") {
  SyntheticSpec spec;
  spec.nodes = 100;
  spec.edges = 1000;
  spec.positive_ratio = 0.8;
  spec.seed = 5;
  const auto g = generate_synthetic(spec);
  CHECK(g.edge_count() == 1000);
  // binomial(1000, 0.8): sigma = sqrt(160)
  CHECK(std::abs(static_cast<double>(g.positive_count()) - 800.0) < 3 * std::sqrt(160.0));
  CHECK(generate_synthetic(spec) == g);

  spec.positive_ratio = 1.0;
  CHECK(generate_synthetic(spec).negative_count() == 0);

  spec.edges = 100 * 100;
  CHECK_THROWS_AS(generate_synthetic(spec), UsageError);
  spec.edges = 50;
  CHECK_THROWS_AS(generate_synthetic(spec), UsageError);
}

TEST_CASE("subgraph_prefix") {
  const auto chain = SignedDigraph::from_edges(4, {{0, 1, 1}, {1, 2, -1}, {2, 3, 1}});
  const auto first = subgraph_prefix(chain, 1);
  CHECK(first.node_count() == 2);
  CHECK(first.edge_count() == 1);
  CHECK(first.edges()[0] == SignedEdge{0, 1, 1});
  CHECK(subgraph_prefix(chain, 3) == chain);

  std::mt19937_64 rng(6);
  SyntheticSpec spec;
  spec.nodes = 500;
  spec.edges = 5000;
  const auto g = generate_synthetic(spec);
  for (std::size_t limit : {1ul, 100ul, 1000ul, 2500ul, 4999ul}) {
    const auto sub = subgraph_prefix(g, limit);
    CHECK(sub.edge_count() >= limit);
    // the next smaller threshold keeps fewer than `limit` edges
    std::size_t below = 0;
    for (const auto& e : g.edges())
      if (std::max(e.src, e.dst) + 1 < sub.node_count()) ++below;
    CHECK(below < limit);
  }
}
