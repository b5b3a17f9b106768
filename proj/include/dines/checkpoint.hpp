#pragma once

#include <filesystem>

#include "dines/model.hpp"
#include "dines/train.hpp"

namespace dines {

inline constexpr int kCheckpointSchemaVersion = 1;

struct Checkpoint {
  TrainConfig config;  // config.model is the resolved model configuration
  std::size_t node_count = 0;
  Model model;
};

/// JSON with the schema version, training configuration, node count and
/// every named parameter. Values round-trip exactly.
void save_checkpoint(const std::filesystem::path& path, const TrainConfig& config,
                     std::size_t node_count, const Model& model);

/// Throws ConfigError on a schema mismatch and DimensionError when a stored
/// parameter is missing or has the wrong shape.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace dines
