#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "dines/error.hpp"
#include "dines/features.hpp"

namespace dines {

std::string provenance_name(FeatureProvenance p) {
  return p == FeatureProvenance::Tsvd ? "tsvd" : "file";
}

void save_features(const std::filesystem::path& path, const FeatureMatrix& features) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  char buf[32];
  std::string line;
  for (std::size_t i = 0; i < features.rows; ++i) {
    line.clear();
    for (std::size_t j = 0; j < features.cols; ++j) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, features.values[i * features.cols + j]);
      if (j) line += ' ';
      line.append(buf, end);
    }
    out << line << '\n';
  }
}

FeatureMatrix load_features(const std::filesystem::path& path, std::size_t expected_rows) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open feature file " + path.string());
  FeatureMatrix f;
  f.provenance = FeatureProvenance::File;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t count = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (true) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p >= end) break;
      double v = 0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t' && *next != '\r')) {
        throw ParseError("non-numeric feature entry", line_no);
      }
      if (!std::isfinite(v)) throw ParseError("non-finite feature entry", line_no);
      f.values.push_back(v);
      ++count;
      p = next;
    }
    if (count == 0) continue;
    if (f.rows == 0) f.cols = count;
    if (count != f.cols) {
      throw ParseError("expected " + std::to_string(f.cols) + " columns, found " +
                       std::to_string(count), line_no);
    }
    ++f.rows;
  }
  if (f.rows != expected_rows) {
    throw DimensionError("feature file has " + std::to_string(f.rows) + " rows, expected " +
                         std::to_string(expected_rows));
  }
  return f;
}

void save_features_meta(const std::filesystem::path& path, const FeatureMatrix& features,
                        std::uint64_t seed) {
  nlohmann::json meta = {
      {"rank", features.cols},
      {"rows", features.rows},
      {"seed", seed},
      {"provenance", provenance_name(features.provenance)},
  };
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << meta.dump(2) << '\n';
}

}  // namespace dines
