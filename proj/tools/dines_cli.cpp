// dines: prepare | train | eval | ablate | scale

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dines/checkpoint.hpp"
#include "dines/edge_list.hpp"
#include "dines/error.hpp"
#include "dines/experiment.hpp"
#include "dines/hyperparameters.hpp"
#include "dines/runtime.hpp"
#include "dines/synthetic.hpp"
#include "dines/timing.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace dines;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitError = 1;
constexpr int kExitDiverged = 3;

std::string timestamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Shortest text that parses back to the same double.
std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + " is not valid JSON: " + e.what());
  }
}

// ---- manifests --------------------------------------------------------------

// Flags are stored resolved, in order, so a replay does not depend on the
// defaults of the binary that replays it.
using Arguments = std::vector<std::pair<std::string, std::string>>;

struct Run {
  std::string command;
  Arguments arguments;
  std::string started = timestamp();
};

void write_manifest(const fs::path& dir, const Run& run, const json& config, const json& inputs,
                    const json& seeds) {
  json args = json::array();
  for (const auto& [flag, value] : run.arguments) args.push_back({flag, value});
  write_json(dir / "manifest.json", {{"tool", "dines"},
                                     {"version", kVersion},
                                     {"command", run.command},
                                     {"arguments", args},
                                     {"config", config},
                                     {"inputs", inputs},
                                     {"seeds", seeds},
                                     {"output", fs::absolute(dir).string()},
                                     {"started", run.started},
                                     {"finished", timestamp()}});
}

// Rebuilds argv from a manifest. Flags given on the command line replace the
// stored ones, so `--out` can redirect a replay.
std::vector<std::string> replay_argv(const std::string& program, const fs::path& manifest,
                                     const std::vector<std::string>& overrides) {
  const auto j = read_json(manifest);
  std::map<std::string, std::string> given;
  for (std::size_t i = 0; i + 1 < overrides.size(); i += 2) given[overrides[i]] = overrides[i + 1];
  std::vector<std::string> argv{program, j.at("command").get<std::string>()};
  for (const auto& pair : j.at("arguments")) {
    const auto flag = pair.at(0).get<std::string>();
    auto value = pair.at(1).get<std::string>();
    if (auto it = given.find(flag); it != given.end()) {
      value = it->second;
      given.erase(it);
    }
    argv.push_back(flag);
    if (!value.empty()) argv.push_back(value);
  }
  for (const auto& [flag, value] : given) {
    argv.push_back(flag);
    argv.push_back(value);
  }
  return argv;
}

// ---- model flags ------------------------------------------------------------

struct ModelFlags {
  std::optional<std::size_t> k, layers, d_out;
  std::optional<double> lambda_disc, lr, weight_decay;
  std::string aggregator = "sum";
  std::string variant = "full";
  std::size_t epochs = 100;
  std::string dataset;
  std::string metric = "auc";
};

void add_model_flags(CLI::App* app, ModelFlags& f) {
  app->add_option("--k", f.k, "number of factors K");
  app->add_option("--layers", f.layers, "number of dsg-conv layers L");
  app->add_option("--d-out", f.d_out, "output embedding width d");
  app->add_option("--lambda-disc", f.lambda_disc, "discriminator loss weight");
  app->add_option("--lr", f.lr, "Adam learning rate");
  app->add_option("--weight-decay", f.weight_decay, "decoupled weight decay");
  app->add_option("--aggregator", f.aggregator, "sum | mean | max | attention")
      ->capture_default_str();
  app->add_option("--variant", f.variant, "full | no-ssl | no-ssl-no-pairwise | entangled")
      ->capture_default_str();
  app->add_option("--epochs", f.epochs)->capture_default_str();
  app->add_option("--dataset", f.dataset, "take unset hyperparameters from this dataset's validated settings");
  app->add_option("--metric", f.metric, "auc | f1: which validated settings --dataset uses")
      ->capture_default_str();
}

TrainConfig resolve(const ModelFlags& f) {
  Hyperparameters h = kDefaultHyperparameters;
  if (!f.dataset.empty()) {
    TargetMetric metric;
    if (f.metric == "auc") metric = TargetMetric::Auc;
    else if (f.metric == "f1") metric = TargetMetric::MacroF1;
    else throw UsageError("unknown metric '" + f.metric + "'");
    auto table = validated_hyperparameters(f.dataset, metric);
    if (!table) throw UsageError("no hyperparameters for dataset '" + f.dataset + "'");
    h = *table;
  }
  TrainConfig c;
  c.epochs = f.epochs;
  c.learning_rate = f.lr.value_or(h.learning_rate);
  c.lambda_disc = f.lambda_disc.value_or(h.lambda_disc);
  c.weight_decay = f.weight_decay.value_or(h.weight_decay);
  auto& enc = c.model.encoder;
  enc.factors = f.k.value_or(h.factors);
  enc.layers = f.layers.value_or(h.layers);
  enc.output_dim = f.d_out.value_or(h.output_dim);
  auto agg = parse_aggregator(f.aggregator);
  if (!agg) throw UsageError("unknown aggregator '" + f.aggregator + "'");
  enc.aggregator = *agg;
  auto variant = parse_variant(f.variant);
  if (!variant) throw UsageError("unknown variant '" + f.variant + "'");
  c.model.variant = *variant;
  c.model = c.model.resolved();
  return c;
}

Arguments model_arguments(const TrainConfig& c) {
  const auto& enc = c.model.encoder;
  return {{"--k", std::to_string(enc.factors)},
          {"--layers", std::to_string(enc.layers)},
          {"--d-out", std::to_string(enc.output_dim)},
          {"--lambda-disc", exact(c.lambda_disc)},
          {"--lr", exact(c.learning_rate)},
          {"--weight-decay", exact(c.weight_decay)},
          {"--aggregator", aggregator_name(enc.aggregator)},
          {"--variant", variant_name(c.model.variant)},
          {"--epochs", std::to_string(c.epochs)}};
}

json config_json(const TrainConfig& c) {
  const auto& enc = c.model.encoder;
  return {{"epochs", c.epochs},
          {"learning_rate", c.learning_rate},
          {"lambda_disc", c.lambda_disc},
          {"weight_decay", c.weight_decay},
          {"seed", c.seed},
          {"variant", variant_name(c.model.variant)},
          {"factors", enc.factors},
          {"layers", enc.layers},
          {"input_dim", enc.input_dim},
          {"output_dim", enc.output_dim},
          {"aggregator", aggregator_name(enc.aggregator)}};
}

// "3", "0,2,5" or "0..9" (inclusive).
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      const auto lo = std::stoull(text.substr(0, dots));
      const auto hi = std::stoull(text.substr(dots + 2));
      if (hi < lo) throw UsageError("empty seed range " + text);
      for (auto s = lo; s <= hi; ++s) out.push_back(s);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    }
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse seeds '" + text + "'");
  }
  if (out.empty()) throw UsageError("no seeds given");
  return out;
}

std::string seeds_text(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) s += (i ? "," : "") + std::to_string(seeds[i]);
  return s;
}

// ---- reports ----------------------------------------------------------------

json metrics_json(const EvalReport& r) {
  return {{"auc", r.auc},
          {"macro_f1", r.macro_f1},
          {"f1_positive", r.f1_positive},
          {"f1_negative", r.f1_negative},
          {"confusion",
           {{"true_positive", r.confusion.true_positive},
            {"false_positive", r.confusion.false_positive},
            {"true_negative", r.confusion.true_negative},
            {"false_negative", r.confusion.false_negative}}},
          {"test_edges", r.test_edges}};
}

json report_json(const std::string& command, const EvalReport& r, const TrainConfig& c,
                 const fs::path& data) {
  return {{"metrics", metrics_json(r)},
          {"timing",
           {{"forward_seconds_per_epoch", r.forward_seconds},
            {"train_seconds_per_epoch", r.epoch_seconds}}},
          {"warnings", r.warnings},
          {"config", config_json(c)},
          {"run",
           {{"tool", "dines"},
            {"version", kVersion},
            {"command", command},
            {"data", fs::absolute(data).string()},
            {"finished", timestamp()}}}};
}

void write_probabilities(const fs::path& path, std::span<const SignedEdge> edges,
                         std::span<const double> probs) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << "src\tdst\tsign\tprobability\n";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << edges[i].src << '\t' << edges[i].dst << '\t' << int(edges[i].sign) << '\t'
        << exact(probs[i]) << '\n';
  }
}

void write_loss(const fs::path& path, std::span<const EpochStats> epochs) {
  std::ofstream out(path);
  out << "epoch\tloss\tbce\tdisc\tforward_seconds\tepoch_seconds\n";
  for (std::size_t e = 0; e < epochs.size(); ++e) {
    const auto& s = epochs[e];
    out << e + 1 << '\t' << exact(s.loss) << '\t' << exact(s.bce) << '\t' << exact(s.disc)
        << '\t' << s.forward_seconds << '\t' << s.epoch_seconds << '\n';
  }
}

PreparedData load_prepared(const fs::path& dir) {
  auto stored = read_split(dir);
  PreparedData data;
  data.node_count = stored.node_count;
  data.split = std::move(stored.split);
  data.features = load_features(dir / "features.tsv", data.node_count);
  return data;
}

// One seed: train, score, and write the per-run artifacts into `dir`.
EvalReport run_seed(const PreparedData& data, TrainConfig config, std::uint64_t seed,
                    const fs::path& data_dir, const fs::path& dir, bool quiet) {
  config.seed = seed;
  fs::create_directories(dir);
  const auto on_epoch = [&](std::size_t epoch, const EpochStats& s) {
    if (!quiet && (epoch == 0 || (epoch + 1) % 10 == 0))
      std::cerr << "  seed " << seed << " epoch " << epoch + 1 << " loss " << s.loss << '\n';
  };
  const auto run = run_experiment(data, config, on_epoch);
  config.model = run.trained.model.config();
  write_json(dir / "report.json", report_json("train", run.report, config, data_dir));
  write_probabilities(dir / "probs.tsv", data.split.test, run.probabilities);
  write_loss(dir / "loss.tsv", run.trained.epochs);
  save_checkpoint(dir / "checkpoint.json", config, data.node_count, run.trained.model);
  return run.report;
}

json summarize(const std::vector<std::uint64_t>& seeds, const std::vector<EvalReport>& reports) {
  std::vector<double> auc, f1;
  for (const auto& r : reports) {
    auc.push_back(r.auc);
    f1.push_back(r.macro_f1);
  }
  const auto a = mean_std(auc), f = mean_std(f1);
  return {{"seeds", seeds},
          {"auc", {{"mean", a.mean}, {"std", a.stddev}, {"values", auc}}},
          {"macro_f1", {{"mean", f.mean}, {"std", f.stddev}, {"values", f1}}}};
}

// Runs every seed; a single seed writes straight into `out`.
json train_seeds(const PreparedData& data, const TrainConfig& config,
                 const std::vector<std::uint64_t>& seeds, const fs::path& data_dir,
                 const fs::path& out, bool quiet) {
  std::vector<EvalReport> reports;
  for (auto seed : seeds) {
    const auto dir = seeds.size() == 1 ? out : out / ("seed-" + std::to_string(seed));
    reports.push_back(run_seed(data, config, seed, data_dir, dir, quiet));
    std::printf("seed %llu: AUC %.2f  Macro-F1 %.2f\n", static_cast<unsigned long long>(seed),
                reports.back().auc, reports.back().macro_f1);
  }
  auto summary = summarize(seeds, reports);
  std::printf("AUC %.2f ± %.2f  Macro-F1 %.2f ± %.2f over %zu seed(s)\n",
              summary["auc"]["mean"].get<double>(), summary["auc"]["std"].get<double>(),
              summary["macro_f1"]["mean"].get<double>(), summary["macro_f1"]["std"].get<double>(),
              seeds.size());
  return summary;
}

// ---- subcommands ------------------------------------------------------------

struct PrepareArgs {
  std::string input, format, out, dataset;
  std::uint64_t split_seed = 0;
  double ratio = 0.8;
  std::size_t rank = 64;
  bool full_graph_features = false;
};

void cmd_prepare(const PrepareArgs& a) {
  Run run{"prepare", {}};
  auto format = parse_edge_list_format(a.format);
  if (!format) throw UsageError("unknown dataset kind '" + a.format + "'");
  const auto loaded = load_edge_list(a.input, *format);
  const auto& g = loaded.graph;

  PrepareOptions opt;
  opt.ratio = a.ratio;
  opt.split_seed = a.split_seed;
  opt.feature_rank = a.rank;
  opt.full_graph_features = a.full_graph_features;
  const auto data = prepare_data(g, opt);

  const fs::path out = a.out;
  fs::create_directories(out);
  write_split(out, data.node_count, data.split);
  save_features(out / "features.tsv", data.features);
  save_features_meta(out / "features.meta.json", data.features, a.split_seed);
  {
    std::ofstream ids(out / "nodes.tsv");
    ids << "index\traw_id\n";
    for (std::size_t i = 0; i < loaded.original_ids.size(); ++i)
      ids << i << '\t' << loaded.original_ids[i] << '\n';
  }

  const double rho = 100.0 * static_cast<double>(g.positive_count()) /
                     static_cast<double>(std::max<std::size_t>(g.edge_count(), 1));
  json stats = {{"nodes", g.node_count()},
                {"edges", g.edge_count()},
                {"positive_edges", g.positive_count()},
                {"negative_edges", g.negative_count()},
                {"positive_percent", rho},
                {"records", loaded.report.records},
                {"self_loops_dropped", loaded.report.self_loops_dropped},
                {"duplicates_collapsed", loaded.report.duplicates_collapsed},
                {"neutral_dropped", loaded.report.neutral_dropped},
                {"train_edges", data.split.train.size()},
                {"test_edges", data.split.test.size()}};
  std::printf("%-10s %10s %10s %10s %8s\n", "dataset", "n", "m", "m+", "rho+(%)");
  std::printf("%-10s %10zu %10zu %10zu %8.1f\n",
              a.dataset.empty() ? fs::path(a.input).filename().c_str() : a.dataset.c_str(),
              g.node_count(), g.edge_count(), g.positive_count(), rho);
  std::printf("records %zu, self-loops dropped %zu, duplicates collapsed %zu, neutral dropped %zu\n",
              loaded.report.records, loaded.report.self_loops_dropped,
              loaded.report.duplicates_collapsed, loaded.report.neutral_dropped);
  std::printf("split seed %llu: %zu train / %zu test edges\n",
              static_cast<unsigned long long>(a.split_seed), data.split.train.size(),
              data.split.test.size());
  if (!a.dataset.empty()) {
    const auto* info = find_dataset(a.dataset);
    if (!info) throw UsageError("unknown dataset '" + a.dataset + "'");
    const bool match = info->nodes == g.node_count() && info->edges == g.edge_count() &&
                       info->positive_edges == g.positive_count();
    stats["published"] = {{"nodes", info->nodes},
                          {"edges", info->edges},
                          {"positive_edges", info->positive_edges},
                          {"positive_percent", info->positive_percent},
                          {"match", match}};
    std::printf("published  %10zu %10zu %10zu %8.1f  %s\n", info->nodes, info->edges,
                info->positive_edges, info->positive_percent, match ? "match" : "MISMATCH");
  }
  write_json(out / "stats.json", stats);

  run.arguments = {{"--input", fs::absolute(a.input).string()},
                   {"--format", a.format},
                   {"--out", a.out},
                   {"--split-seed", std::to_string(a.split_seed)},
                   {"--ratio", exact(a.ratio)},
                   {"--rank", std::to_string(a.rank)}};
  if (a.full_graph_features) run.arguments.push_back({"--full-graph-features", ""});
  if (!a.dataset.empty()) run.arguments.push_back({"--dataset", a.dataset});
  write_manifest(out, run,
                 {{"ratio", a.ratio}, {"rank", a.rank}, {"full_graph_features", a.full_graph_features}},
                 {{"raw", fs::absolute(a.input).string()}, {"format", a.format}},
                 {{"split", a.split_seed}, {"features", a.split_seed}});
}

struct TrainArgs {
  std::string data, out, seeds = "0";
  ModelFlags model;
  bool quiet = false;
};

void cmd_train(const TrainArgs& a) {
  Run run{"train", {}};
  auto config = resolve(a.model);
  const auto seeds = parse_seeds(a.seeds);
  const auto data = load_prepared(a.data);
  config.model.encoder.input_dim = data.features.cols;
  const fs::path out = a.out;
  fs::create_directories(out);

  const auto summary = train_seeds(data, config, seeds, a.data, out, a.quiet);
  if (seeds.size() > 1) write_json(out / "summary.json", summary);

  run.arguments = {{"--data", fs::absolute(a.data).string()}, {"--out", a.out}};
  for (auto& f : model_arguments(config)) run.arguments.push_back(f);
  run.arguments.push_back({"--seeds", seeds_text(seeds)});
  auto cfg = config_json(config);
  cfg.erase("seed");
  write_manifest(out, run, cfg, {{"data", fs::absolute(a.data).string()}}, seeds);
}

struct EvalArgs {
  std::string checkpoint, data, out, embeddings;
};

void cmd_eval(const EvalArgs& a) {
  Run run{"eval", {}};
  const auto ck = load_checkpoint(a.checkpoint);
  const auto data = load_prepared(a.data);
  if (ck.node_count != data.node_count) {
    throw DimensionError("checkpoint was trained on " + std::to_string(ck.node_count) +
                         " nodes, data has " + std::to_string(data.node_count));
  }
  const auto graph = message_graph(data.node_count, data.split);
  const auto x = data.features.to_tensor();
  const auto probs = ck.model.predict(graph, x, data.split.test);
  const auto report = evaluate(probs, data.split.test);
  if (!a.embeddings.empty()) save_embedding(a.embeddings, ck.model.embed(graph, x));
  const auto j = report_json("eval", report, ck.config, a.data);
  std::printf("AUC %.2f  Macro-F1 %.2f on %zu test edges\n", report.auc, report.macro_f1,
              report.test_edges);
  if (a.out.empty()) {
    std::cout << j["metrics"].dump(2) << '\n';
    return;
  }
  const fs::path out = a.out;
  fs::create_directories(out);
  write_json(out / "report.json", j);
  write_probabilities(out / "probs.tsv", data.split.test, probs);
  run.arguments = {{"--checkpoint", fs::absolute(a.checkpoint).string()},
                   {"--data", fs::absolute(a.data).string()},
                   {"--out", a.out}};
  if (!a.embeddings.empty()) run.arguments.push_back({"--embeddings", a.embeddings});
  write_manifest(out, run, config_json(ck.config),
                 {{"checkpoint", fs::absolute(a.checkpoint).string()},
                  {"data", fs::absolute(a.data).string()}},
                 ck.config.seed);
}

void cmd_ablate(const TrainArgs& a) {
  Run run{"ablate", {}};
  const auto seeds = parse_seeds(a.seeds);
  const auto data = load_prepared(a.data);
  const fs::path out = a.out;
  fs::create_directories(out);
  std::ofstream table(out / "ablation.tsv");
  table << "variant\tauc_mean\tauc_std\tmacro_f1_mean\tmacro_f1_std\n";
  json all = json::object();
  for (auto v : {Variant::Full, Variant::NoSsl, Variant::NoSslNoPairwise, Variant::Entangled}) {
    ModelFlags flags = a.model;
    flags.variant = variant_name(v);
    // entangled is defined by K = 1; an explicit --k applies to the others
    if (v == Variant::Entangled) flags.k.reset();
    auto config = resolve(flags);
    config.model.encoder.input_dim = data.features.cols;
    std::printf("== %s\n", variant_name(v).c_str());
    auto summary = train_seeds(data, config, seeds, a.data, out / variant_name(v), a.quiet);
    table << variant_name(v) << '\t' << summary["auc"]["mean"].get<double>() << '\t'
          << summary["auc"]["std"].get<double>() << '\t'
          << summary["macro_f1"]["mean"].get<double>() << '\t'
          << summary["macro_f1"]["std"].get<double>() << '\n';
    all[variant_name(v)] = std::move(summary);
  }
  write_json(out / "summary.json", all);

  run.arguments = {{"--data", fs::absolute(a.data).string()}, {"--out", a.out}};
  for (auto& f : model_arguments(resolve(a.model)))
    if (f.first != "--variant") run.arguments.push_back(f);
  run.arguments.push_back({"--seeds", seeds_text(seeds)});
  write_manifest(out, run, {{"variants", {"full", "no-ssl", "no-ssl-no-pairwise", "entangled"}}},
                 {{"data", fs::absolute(a.data).string()}}, seeds);
}

struct ScaleArgs {
  std::string input, format = "canonical", out, fractions = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0";
  std::string device = "cpu";
  SyntheticSpec synthetic{100000, 1000000, 0.8, 0.57, 0};
  std::size_t warmup = 3, timed = 20, feature_dim = 64;
  std::uint64_t seed = 0;
  ModelFlags model;
};

std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse fractions '" + text + "'");
  }
  return out;
}

void cmd_scale(const ScaleArgs& a) {
  Run run{"scale", {}};
  const auto fractions = parse_fractions(a.fractions);
  SignedDigraph g;
  json inputs;
  if (a.input.empty()) {
    g = generate_synthetic(a.synthetic);
    inputs = {{"synthetic",
               {{"nodes", a.synthetic.nodes},
                {"edges", a.synthetic.edges},
                {"positive_ratio", a.synthetic.positive_ratio},
                {"skew", a.synthetic.power_law_skew},
                {"seed", a.synthetic.seed}}}};
  } else {
    auto format = parse_edge_list_format(a.format);
    if (!format) throw UsageError("unknown format '" + a.format + "'");
    g = load_edge_list(a.input, *format).graph;
    inputs = {{"raw", fs::absolute(a.input).string()}, {"format", a.format}};
  }
  std::printf("graph: n=%zu m=%zu\n", g.node_count(), g.edge_count());

  TimingConfig tc;
  tc.train = resolve(a.model);
  tc.train.seed = a.seed;
  tc.warmup_epochs = a.warmup;
  tc.timed_epochs = a.timed;
  tc.feature_dim = a.feature_dim;
  tc.device = a.device;
  const auto rows = timing_sweep(g, fractions, tc, [](const TimingRow& r) {
    std::printf("fraction %.3f  m=%zu  forward %.4fs  train %.4fs\n", r.fraction, r.edges,
                r.forward_seconds, r.train_seconds);
    std::fflush(stdout);
  });

  const fs::path out = a.out;
  fs::create_directories(out);
  {
    std::ofstream t(out / "timing.tsv");
    write_timing(t, rows);
  }
  json fits = json::object();
  if (rows.size() >= 2) {
    std::vector<double> m, fwd, trn;
    for (const auto& r : rows) {
      m.push_back(static_cast<double>(r.edges));
      fwd.push_back(r.forward_seconds);
      trn.push_back(r.train_seconds);
    }
    const auto f = linear_fit(m, fwd), t = linear_fit(m, trn);
    fits["forward"] = {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
    fits["train"] = {{"slope", t.slope}, {"intercept", t.intercept}, {"r_squared", t.r_squared}};
    std::printf("forward: slope %.3e s/edge, R^2 %.4f\n", f.slope, f.r_squared);
    std::printf("train:   slope %.3e s/edge, R^2 %.4f\n", t.slope, t.r_squared);
  }
  write_json(out / "fit.json", fits);

  if (a.input.empty()) {
    run.arguments = {{"--synthetic-nodes", std::to_string(a.synthetic.nodes)},
                     {"--synthetic-edges", std::to_string(a.synthetic.edges)},
                     {"--positive-ratio", exact(a.synthetic.positive_ratio)},
                     {"--skew", exact(a.synthetic.power_law_skew)},
                     {"--graph-seed", std::to_string(a.synthetic.seed)}};
  } else {
    run.arguments = {{"--input", fs::absolute(a.input).string()}, {"--format", a.format}};
  }
  for (auto f : std::initializer_list<std::pair<std::string, std::string>>{
           {"--out", a.out},
           {"--fractions", a.fractions},
           {"--device", a.device},
           {"--warmup", std::to_string(a.warmup)},
           {"--timed", std::to_string(a.timed)},
           {"--feature-dim", std::to_string(a.feature_dim)},
           {"--seed", std::to_string(a.seed)}})
    run.arguments.push_back(f);
  for (auto& f : model_arguments(tc.train))
    if (f.first != "--epochs") run.arguments.push_back(f);
  write_manifest(out, run, config_json(tc.train), inputs, a.seed);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Disentangled signed directed graph embeddings"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  PrepareArgs prep;
  auto* p = app.add_subcommand("prepare", "ingest a raw edge list, split it, compute TSVD features");
  p->add_option("--input", prep.input, "raw edge list")->required()->check(CLI::ExistingFile);
  p->add_option("--format", prep.format, "bitcoin-csv | triple-tsv | canonical")->required();
  p->add_option("--out", prep.out, "output directory")->required();
  p->add_option("--split-seed", prep.split_seed)->capture_default_str();
  p->add_option("--ratio", prep.ratio, "training fraction")->capture_default_str();
  p->add_option("--rank", prep.rank, "TSVD feature width")->capture_default_str();
  p->add_flag("--full-graph-features", prep.full_graph_features,
              "TSVD over all edges rather than training edges only");
  p->add_option("--dataset", prep.dataset, "compare statistics with this published dataset");

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "train and evaluate on a prepared directory");
  t->add_option("--data", tr.data, "prepared directory")->required()->check(CLI::ExistingDirectory);
  t->add_option("--out", tr.out, "output directory")->required();
  t->add_option("--seed,--seeds", tr.seeds, "seed, list a,b,c or range a..b")->capture_default_str();
  t->add_flag("--quiet", tr.quiet);
  add_model_flags(t, tr.model);

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "recompute test metrics from a checkpoint");
  e->add_option("--checkpoint", ev.checkpoint)->required()->check(CLI::ExistingFile);
  e->add_option("--data", ev.data)->required()->check(CLI::ExistingDirectory);
  e->add_option("--out", ev.out, "write report.json and probs.tsv here");
  e->add_option("--embeddings", ev.embeddings, "write every node's K factor vectors here");

  TrainArgs ab;
  auto* b = app.add_subcommand("ablate", "train the four model variants on one split");
  b->add_option("--data", ab.data)->required()->check(CLI::ExistingDirectory);
  b->add_option("--out", ab.out)->required();
  b->add_option("--seed,--seeds", ab.seeds)->capture_default_str();
  b->add_flag("--quiet", ab.quiet);
  add_model_flags(b, ab.model);
  b->remove_option(b->get_option("--variant"));

  ScaleArgs sc;
  auto* s = app.add_subcommand("scale", "time training on growing prefix subgraphs");
  s->add_option("--input", sc.input, "edge list; a synthetic graph is used when absent");
  s->add_option("--format", sc.format)->capture_default_str();
  s->add_option("--out", sc.out)->required();
  s->add_option("--fractions", sc.fractions)->capture_default_str();
  s->add_option("--device", sc.device)->capture_default_str();
  s->add_option("--synthetic-nodes", sc.synthetic.nodes)->capture_default_str();
  s->add_option("--synthetic-edges", sc.synthetic.edges)->capture_default_str();
  s->add_option("--positive-ratio", sc.synthetic.positive_ratio)->capture_default_str();
  s->add_option("--skew", sc.synthetic.power_law_skew)->capture_default_str();
  s->add_option("--graph-seed", sc.synthetic.seed)->capture_default_str();
  s->add_option("--warmup", sc.warmup)->capture_default_str();
  s->add_option("--timed", sc.timed)->capture_default_str();
  s->add_option("--feature-dim", sc.feature_dim)->capture_default_str();
  s->add_option("--seed", sc.seed)->capture_default_str();
  add_model_flags(s, sc.model);
  s->remove_option(s->get_option("--epochs"));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*p) cmd_prepare(prep);
    if (*t) cmd_train(tr);
    if (*e) cmd_eval(ev);
    if (*b) cmd_ablate(ab);
    if (*s) cmd_scale(sc);
  } catch (const DivergenceError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitDiverged;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  dines::tune_allocator();
  // `dines <command> --manifest m.json [--flag value ...]` replays a run.
  std::vector<std::string> args(argv, argv + argc);
  for (std::size_t i = 2; i + 1 < args.size(); ++i) {
    if (args[i] != "--manifest") continue;
    std::vector<std::string> rest(args.begin() + 2, args.begin() + i);
    rest.insert(rest.end(), args.begin() + i + 2, args.end());
    try {
      args = replay_argv(args[0], args[i + 1], rest);
    } catch (const std::exception& err) {
      std::fprintf(stderr, "error: %s\n", err.what());
      return kExitError;
    }
    break;
  }
  std::vector<char*> ptrs;
  for (auto& a : args) ptrs.push_back(a.data());
  return run_cli(static_cast<int>(ptrs.size()), ptrs.data());
}
