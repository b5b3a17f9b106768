#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dines/graph.hpp"
#include "dines/train.hpp"

namespace dines {

struct TimingConfig {
  TrainConfig train;  // epochs is ignored; warmup + timed epochs are run
  std::size_t warmup_epochs = 3;
  std::size_t timed_epochs = 20;
  std::size_t feature_dim = 64;
  std::string device = "cpu";
};

struct TimingRow {
  double fraction = 0.0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double forward_seconds = 0.0;  // mean per epoch
  double train_seconds = 0.0;    // mean per epoch, forward + backward + step
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Needs two distinct x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Times training on the prefix subgraphs of `g` holding round(f m) edges for
/// each fraction f. Features are seeded Gaussian noise of width feature_dim.
/// Throws UsageError for fractions that are not ascending in (0, 1], or for a
/// device other than "cpu".
std::vector<TimingRow> timing_sweep(const SignedDigraph& g, std::span<const double> fractions,
                                    const TimingConfig& config,
                                    const std::function<void(const TimingRow&)>& on_row = {});

/// Tab-separated with a header line.
void write_timing(std::ostream& out, std::span<const TimingRow> rows);

}  // namespace dines
