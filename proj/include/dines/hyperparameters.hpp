#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "dines/edge_list.hpp"

namespace dines {

enum class TargetMetric { Auc, MacroF1 };

struct Hyperparameters {
  std::size_t layers = 2;
  std::size_t factors = 8;
  std::size_t output_dim = 64;
  double lambda_disc = 0.1;
  double learning_rate = 0.005;
  double weight_decay = 0.005;
};

/// Values used when no dataset is named.
inline constexpr Hyperparameters kDefaultHyperparameters{};

/// Published per-dataset settings, keyed by the names in known_datasets().
std::optional<Hyperparameters> validated_hyperparameters(std::string_view dataset,
                                                         TargetMetric metric);

struct DatasetInfo {
  std::string_view name;
  std::string_view file;  // conventional raw file name
  EdgeListFormat format;
  std::size_t nodes;
  std::size_t edges;
  std::size_t positive_edges;
  double positive_percent;  // one decimal
};

std::span<const DatasetInfo> known_datasets();
const DatasetInfo* find_dataset(std::string_view name);

}  // namespace dines
