#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dines/graph.hpp"

namespace dines {

struct Confusion {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t true_negative = 0;
  std::size_t false_negative = 0;

  std::size_t total() const {
    return true_positive + false_positive + true_negative + false_negative;
  }
};

struct F1Report {
  double macro = 0.0;  // percent
  double positive = 0.0;
  double negative = 0.0;
  Confusion confusion;
  std::vector<std::string> warnings;
};

/// 1 for a positive edge, 0 for a negative one.
std::vector<int> sign_labels(std::span<const SignedEdge> edges);

/// Mann-Whitney AUC in percent, ties sharing their average rank. Labels are
/// 0/1. Throws MetricError when only one class is present.
double auc_percent(std::span<const double> scores, std::span<const int> labels);

/// Unweighted mean of the per-class F1 of classes 1 and 0, in percent. A
/// class missing from both inputs scores 0 and adds a warning.
F1Report macro_f1(std::span<const int> predicted, std::span<const int> labels);

/// Ranks starting at 1, ties receiving their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation. Throws MetricError for fewer than 3 points or
/// when either input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace dines
