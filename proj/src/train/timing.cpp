#include "dines/timing.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "dines/error.hpp"

namespace dines {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw UsageError("linear fit needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw UsageError("linear fit needs two distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

std::vector<TimingRow> timing_sweep(const SignedDigraph& g, std::span<const double> fractions,
                                    const TimingConfig& config,
                                    const std::function<void(const TimingRow&)>& on_row) {
  if (config.device != "cpu") throw UsageError("unsupported device '" + config.device + "'");
  if (fractions.empty()) throw UsageError("no fractions given");
  double prev = 0.0;
  for (double f : fractions) {
    if (!(f > prev && f <= 1.0)) throw UsageError("fractions must ascend within (0, 1]");
    prev = f;
  }
  if (config.timed_epochs == 0) throw UsageError("timed epochs must be at least 1");

  std::vector<TimingRow> rows;
  for (double f : fractions) {
    const auto limit = static_cast<std::size_t>(std::llround(f * static_cast<double>(g.edge_count())));
    const SignedDigraph sub = subgraph_prefix(g, std::max<std::size_t>(limit, 1));

    FeatureMatrix x;
    x.rows = sub.node_count();
    x.cols = config.feature_dim;
    x.values.resize(x.rows * x.cols);
    std::mt19937_64 rng(config.train.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& v : x.values) v = normal(rng);

    TrainConfig tc = config.train;
    tc.epochs = config.warmup_epochs + config.timed_epochs;
    const auto result = train(sub, x, tc);

    TimingRow row;
    row.fraction = f;
    row.nodes = sub.node_count();
    row.edges = sub.edge_count();
    for (std::size_t e = config.warmup_epochs; e < result.epochs.size(); ++e) {
      row.forward_seconds += result.epochs[e].forward_seconds;
      row.train_seconds += result.epochs[e].epoch_seconds;
    }
    row.forward_seconds /= static_cast<double>(config.timed_epochs);
    row.train_seconds /= static_cast<double>(config.timed_epochs);
    rows.push_back(row);
    if (on_row) on_row(row);
  }
  return rows;
}

void write_timing(std::ostream& out, std::span<const TimingRow> rows) {
  out << "fraction\tnodes\tedges\tforward_seconds\ttrain_seconds\n";
  for (const auto& r : rows) {
    out << r.fraction << '\t' << r.nodes << '\t' << r.edges << '\t' << r.forward_seconds << '\t'
        << r.train_seconds << '\n';
  }
}

}  // namespace dines
