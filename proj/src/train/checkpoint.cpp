#include "dines/checkpoint.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "dines/error.hpp"

namespace dines {

using nlohmann::json;

void save_checkpoint(const std::filesystem::path& path, const TrainConfig& config,
                     std::size_t node_count, const Model& model) {
  const auto& enc = model.config().encoder;
  std::vector<std::size_t> widths;
  for (std::size_t l = 0; l <= enc.layers; ++l) widths.push_back(enc.width(l));
  json j;
  j["schema_version"] = kCheckpointSchemaVersion;
  j["node_count"] = node_count;
  j["config"] = {
      {"epochs", config.epochs},
      {"learning_rate", config.learning_rate},
      {"lambda_disc", config.lambda_disc},
      {"weight_decay", config.weight_decay},
      {"seed", config.seed},
      {"variant", variant_name(model.config().variant)},
      {"factors", enc.factors},
      {"layers", enc.layers},
      {"input_dim", enc.input_dim},
      {"widths", widths},
      {"aggregator", aggregator_name(enc.aggregator)},
  };
  json params = json::object();
  for (const auto& p : model.parameters()) {
    params[p.name] = {{"shape", p.tensor.shape()},
                      {"values", std::vector<double>(p.tensor.values().begin(),
                                                     p.tensor.values().end())}};
  }
  j["params"] = std::move(params);
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << j.dump() << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open checkpoint " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  if (!j.contains("schema_version") || j["schema_version"] != kCheckpointSchemaVersion) {
    throw ConfigError("checkpoint schema version mismatch (expected " +
                      std::to_string(kCheckpointSchemaVersion) + ")");
  }
  Checkpoint ck;
  try {
    const auto& c = j.at("config");
    ck.node_count = j.at("node_count").get<std::size_t>();
    ck.config.epochs = c.at("epochs").get<std::size_t>();
    ck.config.learning_rate = c.at("learning_rate").get<double>();
    ck.config.lambda_disc = c.at("lambda_disc").get<double>();
    ck.config.weight_decay = c.at("weight_decay").get<double>();
    ck.config.seed = c.at("seed").get<std::uint64_t>();
    auto variant = parse_variant(c.at("variant").get<std::string>());
    auto aggregator = parse_aggregator(c.at("aggregator").get<std::string>());
    if (!variant || !aggregator) throw ConfigError("checkpoint names an unknown variant or aggregator");
    auto& enc = ck.config.model.encoder;
    ck.config.model.variant = *variant;
    enc.aggregator = *aggregator;
    enc.factors = c.at("factors").get<std::size_t>();
    enc.layers = c.at("layers").get<std::size_t>();
    enc.input_dim = c.at("input_dim").get<std::size_t>();
    enc.widths = c.at("widths").get<std::vector<std::size_t>>();
    enc.output_dim = enc.widths.empty() ? enc.output_dim : enc.widths.back();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint config: ") + e.what());
  }
  ck.config.validate();

  ck.model = Model::initialize(ck.config.model, 0);
  const auto& stored = j.at("params");
  for (auto& p : ck.model.parameters()) {
    if (!stored.contains(p.name)) throw DimensionError("checkpoint lacks parameter " + p.name);
    const auto shape = stored[p.name].at("shape").get<Shape>();
    const auto values = stored[p.name].at("values").get<std::vector<double>>();
    if (shape != p.tensor.shape() || values.size() != p.tensor.size()) {
      throw DimensionError("checkpoint parameter " + p.name + " has shape " + shape_string(shape) +
                           ", expected " + shape_string(p.tensor.shape()));
    }
    auto dst = p.tensor.mutable_values();
    std::copy(values.begin(), values.end(), dst.begin());
  }
  if (stored.size() != ck.model.parameters().size()) {
    throw DimensionError("checkpoint holds parameters the configuration does not use");
  }
  return ck;
}

}  // namespace dines
