#include <chrono>
#include <cmath>
#include <numeric>

#include "dines/adam.hpp"
#include "dines/error.hpp"
#include "dines/ops.hpp"
#include "dines/train.hpp"

namespace dines {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool finite_non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void TrainConfig::validate() const {
  if (epochs == 0) throw ConfigError("epochs must be at least 1");
  if (!(std::isfinite(learning_rate) && learning_rate > 0.0)) {
    throw ConfigError("learning rate must be positive");
  }
  if (!finite_non_negative(lambda_disc)) throw ConfigError("lambda_disc must be >= 0");
  if (!finite_non_negative(weight_decay)) throw ConfigError("weight decay must be >= 0");
  model.resolved().encoder.validate();
}

std::vector<double> TrainResult::loss_trace() const {
  std::vector<double> out;
  out.reserve(epochs.size());
  for (const auto& e : epochs) out.push_back(e.loss);
  return out;
}

double TrainResult::mean_forward_seconds() const {
  if (epochs.empty()) return 0.0;
  double s = 0.0;
  for (const auto& e : epochs) s += e.forward_seconds;
  return s / static_cast<double>(epochs.size());
}

double TrainResult::mean_epoch_seconds() const {
  if (epochs.empty()) return 0.0;
  double s = 0.0;
  for (const auto& e : epochs) s += e.epoch_seconds;
  return s / static_cast<double>(epochs.size());
}

SignedDigraph message_graph(std::size_t node_count, const EdgeSplit& split) {
  return SignedDigraph::from_edges(node_count, split.train);
}

TrainResult train(const SignedDigraph& train_graph, const FeatureMatrix& features,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  TrainConfig cfg = config;
  cfg.model.encoder.input_dim = features.cols;
  cfg.validate();
  if (features.rows != train_graph.node_count()) {
    throw DimensionError("feature rows " + std::to_string(features.rows) + " != node count " +
                         std::to_string(train_graph.node_count()));
  }
  const auto edges = train_graph.edges();
  if (edges.empty()) throw UsageError("training graph has no edges");

  TrainResult result{Model::initialize(cfg.model, cfg.seed), {}};
  const Model& model = result.model;
  const Tensor x = features.to_tensor();
  const auto labels = edge_labels(edges);
  const bool with_disc = uses_discriminator(model.config().variant) && cfg.lambda_disc > 0.0;

  std::vector<Tensor> params;
  for (auto& p : model.parameters()) params.push_back(p.tensor);
  Adam optimizer(params, cfg.learning_rate, cfg.weight_decay);

  result.epochs.reserve(cfg.epochs);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    EpochStats stats;
    try {
      optimizer.zero_grad();
      const auto t0 = Clock::now();
      const auto z = model.embed(train_graph, x);
      const Tensor bce = bce_loss(sigmoid(model.logits(z, edges)), labels);
      Tensor disc;
      if (with_disc) disc = disc_loss(z, model.decoder().disc_weight, model.decoder().disc_bias);
      const Tensor loss = total_loss(bce, disc, with_disc ? cfg.lambda_disc : 0.0);
      stats.forward_seconds = seconds_since(t0);
      loss.backward();
      optimizer.step();
      stats.epoch_seconds = seconds_since(t0);
      stats.loss = loss.item();
      stats.bce = bce.item();
      stats.disc = disc.defined() ? disc.item() : 0.0;
    } catch (const NumericError& e) {
      throw DivergenceError(std::string("training diverged: ") + e.what(), epoch);
    }
    for (const auto& p : params) {
      for (double v : p.values()) {
        if (!std::isfinite(v)) throw DivergenceError("parameter became non-finite", epoch);
      }
    }
    result.epochs.push_back(stats);
    if (on_epoch) on_epoch(epoch, stats);
  }
  return result;
}

EvalReport evaluate(std::span<const double> probabilities, std::span<const SignedEdge> edges) {
  if (probabilities.size() != edges.size()) {
    throw DimensionError("evaluate: one probability per edge expected");
  }
  const auto labels = sign_labels(edges);
  std::vector<int> predicted;
  predicted.reserve(probabilities.size());
  for (double p : probabilities) predicted.push_back(predict_sign(p) ? 1 : 0);
  EvalReport r;
  r.auc = auc_percent(probabilities, labels);
  auto f = macro_f1(predicted, labels);
  r.macro_f1 = f.macro;
  r.f1_positive = f.positive;
  r.f1_negative = f.negative;
  r.confusion = f.confusion;
  r.warnings = std::move(f.warnings);
  r.test_edges = edges.size();
  return r;
}

}  // namespace dines
