#include "dines/hyperparameters.hpp"

#include <array>

namespace dines {
namespace {

struct Entry {
  std::string_view dataset;
  Hyperparameters auc;
  Hyperparameters f1;
};

//                     L  K   d    disc  lr     reg
constexpr std::array<Entry, 5> kTable{{
    {"bc-alpha", {2, 8, 64, 0.1, 0.01, 0.005}, {2, 16, 64, 0.1, 0.005, 0.005}},
    {"bc-otc", {2, 8, 64, 0.1, 0.005, 0.01}, {2, 8, 64, 0.1, 0.005, 0.005}},
    {"wiki-rfa", {2, 8, 64, 0.1, 0.005, 0.005}, {2, 16, 64, 0.1, 0.005, 0.005}},
    {"slashdot", {2, 8, 64, 0.5, 0.01, 0.01}, {2, 8, 64, 0.1, 0.005, 0.01}},
    {"epinions", {2, 8, 64, 0.1, 0.005, 0.005}, {2, 8, 64, 0.1, 0.005, 0.01}},
}};

constexpr std::array<DatasetInfo, 5> kDatasets{{
    {"bc-alpha", "soc-sign-bitcoinalpha.csv", EdgeListFormat::BitcoinCsv, 3783, 24186, 22650, 93.6},
    {"bc-otc", "soc-sign-bitcoinotc.csv", EdgeListFormat::BitcoinCsv, 5881, 35592, 32029, 90.0},
    {"wiki-rfa", "wiki-rfa.tsv", EdgeListFormat::Triple, 11258, 178096, 138473, 78.3},
    {"slashdot", "out.slashdot-zoo", EdgeListFormat::Triple, 79120, 515397, 392326, 76.1},
    {"epinions", "soc-sign-epinions.txt", EdgeListFormat::Triple, 131828, 841372, 717667, 85.3},
}};

}  // namespace

std::optional<Hyperparameters> validated_hyperparameters(std::string_view dataset,
                                                         TargetMetric metric) {
  for (const auto& e : kTable) {
    if (e.dataset == dataset) return metric == TargetMetric::Auc ? e.auc : e.f1;
  }
  return std::nullopt;
}

std::span<const DatasetInfo> known_datasets() { return kDatasets; }

const DatasetInfo* find_dataset(std::string_view name) {
  for (const auto& d : kDatasets)
    if (d.name == name) return &d;
  return nullptr;
}

}  // namespace dines
