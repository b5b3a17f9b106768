#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dines/features.hpp"
#include "dines/metrics.hpp"
#include "dines/model.hpp"
#include "dines/split.hpp"

namespace dines {

struct TrainConfig {
  std::size_t epochs = 100;
  double learning_rate = 0.005;
  double lambda_disc = 0.1;
  double weight_decay = 0.005;  // lambda_reg
  std::uint64_t seed = 0;
  ModelConfig model;

  /// Throws ConfigError on epochs = 0, a negative or non-finite rate or
  /// weight, or an invalid encoder configuration.
  void validate() const;
};

struct EpochStats {
  double loss = 0.0;
  double bce = 0.0;
  double disc = 0.0;
  double forward_seconds = 0.0;  // encoder, decoder and loss
  double epoch_seconds = 0.0;    // forward, backward and optimizer step
};

struct TrainResult {
  Model model;
  std::vector<EpochStats> epochs;

  std::vector<double> loss_trace() const;
  double mean_forward_seconds() const;
  double mean_epoch_seconds() const;
};

using EpochCallback = std::function<void(std::size_t epoch, const EpochStats&)>;

/// Message-passing graph: all n nodes, training edges only.
SignedDigraph message_graph(std::size_t node_count, const EdgeSplit& split);

/// Full-batch training on every edge of `train_graph`. The feature width
/// overrides config.model.encoder.input_dim. Throws DivergenceError with the
/// epoch index when a non-finite value appears.
TrainResult train(const SignedDigraph& train_graph, const FeatureMatrix& features,
                  const TrainConfig& config, const EpochCallback& on_epoch = {});

struct EvalReport {
  double auc = 0.0;       // percent
  double macro_f1 = 0.0;  // percent
  double f1_positive = 0.0;
  double f1_negative = 0.0;
  Confusion confusion;
  std::size_t test_edges = 0;
  double forward_seconds = 0.0;  // per epoch, from training
  double epoch_seconds = 0.0;
  std::vector<std::string> warnings;
};

/// AUC and Macro-F1 of probabilities against the signs of `edges`.
EvalReport evaluate(std::span<const double> probabilities, std::span<const SignedEdge> edges);

}  // namespace dines
