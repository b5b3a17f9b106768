#include "dines/experiment.hpp"

#include <cmath>

#include "dines/error.hpp"

namespace dines {

PreparedData prepare_data(const SignedDigraph& g, const PrepareOptions& options) {
  PreparedData data;
  data.node_count = g.node_count();
  data.split = split_edges(g, options.ratio, options.split_seed);
  if (options.full_graph_features) {
    data.features = tsvd_features(g, options.feature_rank, options.split_seed);
  } else {
    data.features =
        tsvd_features(message_graph(data.node_count, data.split), options.feature_rank,
                      options.split_seed);
  }
  return data;
}

RunOutcome run_experiment(const PreparedData& data, const TrainConfig& config,
                          const EpochCallback& on_epoch) {
  if (data.features.rows != data.node_count) {
    throw DimensionError("features have " + std::to_string(data.features.rows) +
                         " rows for " + std::to_string(data.node_count) + " nodes");
  }
  const auto graph = message_graph(data.node_count, data.split);
  RunOutcome out{train(graph, data.features, config, on_epoch), {}, {}};
  out.probabilities =
      out.trained.model.predict(graph, data.features.to_tensor(), data.split.test);
  out.report = evaluate(out.probabilities, data.split.test);
  out.report.forward_seconds = out.trained.mean_forward_seconds();
  out.report.epoch_seconds = out.trained.mean_epoch_seconds();
  return out;
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) throw UsageError("mean of no values");
  MeanStd r;
  for (double v : values) r.mean += v;
  r.mean /= static_cast<double>(values.size());
  if (values.size() < 2) return r;
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return r;
}

}  // namespace dines
