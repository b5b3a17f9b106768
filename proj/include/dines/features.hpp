#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dines/graph.hpp"
#include "dines/tensor.hpp"

namespace dines {

enum class FeatureProvenance { Tsvd, File };

/// Dense n x d node feature matrix, row-major.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  FeatureProvenance provenance = FeatureProvenance::File;

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values).subspan(i * cols, cols);
  }
  Tensor to_tensor() const { return Tensor::matrix(rows, cols, values); }
};

struct SparseEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  double value = 0.0;
};

/// Rank-k factors A ~ U diag(S) V^T. U is rows x k and V is cols x k, both
/// row-major; S is non-increasing.
struct TruncatedSvd {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  std::vector<double> u;
  std::vector<double> singular_values;
  std::vector<double> v;
};

struct RangeFinderOptions {
  std::size_t oversampling = 10;
  std::size_t power_iterations = 4;
};

/// Randomized range-finder SVD of a sparse matrix given as coordinate
/// entries (repeated coordinates are summed). Deterministic under `seed`.
TruncatedSvd randomized_svd(std::size_t rows, std::size_t cols, std::span<const SparseEntry> entries,
                            std::size_t rank, std::uint64_t seed, RangeFinderOptions options = {});

/// A[u][v] = sign of edge u -> v.
std::vector<SparseEntry> signed_adjacency(const SignedDigraph& g);

/// X = U_d diag(S_d) from a rank-d truncated SVD of the signed adjacency of
/// `g`. Pass the training graph only.
FeatureMatrix tsvd_features(const SignedDigraph& g, std::size_t rank, std::uint64_t seed,
                            RangeFinderOptions options = {});

/// Whitespace-separated text, one node per row. Values round-trip exactly.
void save_features(const std::filesystem::path& path, const FeatureMatrix& features);
FeatureMatrix load_features(const std::filesystem::path& path, std::size_t expected_rows);

/// features.meta.json: {rank, seed, provenance}.
void save_features_meta(const std::filesystem::path& path, const FeatureMatrix& features,
                        std::uint64_t seed);

std::string provenance_name(FeatureProvenance p);

}  // namespace dines
