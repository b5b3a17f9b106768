#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dines/features.hpp"
#include "dines/graph.hpp"
#include "dines/split.hpp"
#include "dines/train.hpp"

namespace dines {

/// Everything a training run reads: the split and the node features.
struct PreparedData {
  std::size_t node_count = 0;
  EdgeSplit split;
  FeatureMatrix features;
};

struct PrepareOptions {
  double ratio = 0.8;
  std::uint64_t split_seed = 0;
  std::size_t feature_rank = 64;
  /// TSVD over all edges instead of training edges only.
  bool full_graph_features = false;
};

/// Splits `g` and derives TSVD features. The feature seed is the split seed.
PreparedData prepare_data(const SignedDigraph& g, const PrepareOptions& options);

struct RunOutcome {
  TrainResult trained;
  std::vector<double> probabilities;  // one per test edge, in split order
  EvalReport report;
};

/// Trains on the split's training edges and scores the test edges.
RunOutcome run_experiment(const PreparedData& data, const TrainConfig& config,
                          const EpochCallback& on_epoch = {});

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for one value
};

MeanStd mean_std(std::span<const double> values);

}  // namespace dines
