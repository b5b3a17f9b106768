#include "dines/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dines/error.hpp"

namespace dines {

std::vector<int> sign_labels(std::span<const SignedEdge> edges) {
  std::vector<int> y;
  y.reserve(edges.size());
  for (const auto& e : edges) y.push_back(e.positive() ? 1 : 0);
  return y;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = avg;
    i = j;
  }
  return ranks;
}

double auc_percent(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DimensionError("auc: scores and labels differ in length");
  std::size_t pos = 0;
  for (int y : labels) pos += (y == 1);
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw MetricError("auc is undefined with a single class");
  const auto ranks = average_ranks(scores);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < ranks.size(); ++i)
    if (labels[i] == 1) rank_sum += ranks[i];
  const double p = static_cast<double>(pos);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return 100.0 * u / (p * static_cast<double>(neg));
}

namespace {

double f1(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

F1Report macro_f1(std::span<const int> predicted, std::span<const int> labels) {
  if (predicted.size() != labels.size()) {
    throw DimensionError("macro_f1: predictions and labels differ in length");
  }
  F1Report r;
  auto& c = r.confusion;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool p = predicted[i] == 1, y = labels[i] == 1;
    if (p && y) ++c.true_positive;
    else if (p) ++c.false_positive;
    else if (y) ++c.false_negative;
    else ++c.true_negative;
  }
  r.positive = f1(c.true_positive, c.false_positive, c.false_negative);
  r.negative = f1(c.true_negative, c.false_negative, c.false_positive);
  if (c.true_positive + c.false_positive + c.false_negative == 0) {
    r.warnings.push_back("class + absent from predictions and labels; its F1 counts as 0");
  }
  if (c.true_negative + c.false_negative + c.false_positive == 0) {
    r.warnings.push_back("class - absent from predictions and labels; its F1 counts as 0");
  }
  r.macro = 100.0 * 0.5 * (r.positive + r.negative);
  r.positive *= 100.0;
  r.negative *= 100.0;
  return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("spearman: inputs differ in length");
  if (x.size() < 3) throw MetricError("spearman needs at least 3 points");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw MetricError("spearman is undefined for a constant input");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace dines
