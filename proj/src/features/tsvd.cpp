#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <Eigen/Sparse>

#include "dines/error.hpp"
#include "dines/features.hpp"

namespace dines {
namespace {

using Dense = Eigen::MatrixXd;
using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

Dense orthonormal_basis(const Dense& y) {
  Eigen::HouseholderQR<Dense> qr(y);
  return qr.householderQ() * Dense::Identity(y.rows(), y.cols());
}

}  // namespace

std::vector<SparseEntry> signed_adjacency(const SignedDigraph& g) {
  std::vector<SparseEntry> out;
  out.reserve(g.edge_count());
  for (const auto& e : g.edges()) out.push_back({e.src, e.dst, static_cast<double>(e.sign)});
  return out;
}

TruncatedSvd randomized_svd(std::size_t rows, std::size_t cols, std::span<const SparseEntry> entries,
                            std::size_t rank, std::uint64_t seed, RangeFinderOptions options) {
  const std::size_t limit = std::min(rows, cols);
  if (rank == 0 || rank > limit) {
    throw UsageError("svd rank " + std::to_string(rank) + " outside [1, " + std::to_string(limit) +
                     "]");
  }
  const auto sketch = static_cast<Eigen::Index>(std::min(rank + options.oversampling, limit));

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) throw UsageError("sparse entry outside matrix bounds");
    triplets.emplace_back(e.row, e.col, e.value);
  }
  Sparse a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  a.setFromTriplets(triplets.begin(), triplets.end());
  const Sparse at = a.transpose();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dense omega(static_cast<Eigen::Index>(cols), sketch);
  for (Eigen::Index j = 0; j < omega.cols(); ++j)
    for (Eigen::Index i = 0; i < omega.rows(); ++i) omega(i, j) = normal(rng);

  Dense q = orthonormal_basis(a * omega);
  for (std::size_t it = 0; it < options.power_iterations; ++it) {
    const Dense z = orthonormal_basis(at * q);
    q = orthonormal_basis(a * z);
  }
  const Dense b = (at * q).transpose();  // sketch x cols

  Eigen::BDCSVD<Dense> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Dense u = q * svd.matrixU();
  const Dense& v = svd.matrixV();
  const auto& s = svd.singularValues();

  TruncatedSvd out;
  out.rows = rows;
  out.cols = cols;
  out.rank = rank;
  out.singular_values.assign(s.data(), s.data() + rank);
  out.u.resize(rows * rank);
  out.v.resize(cols * rank);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rank; ++k)
      out.u[i * rank + k] = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t k = 0; k < rank; ++k)
      out.v[i * rank + k] = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  return out;
}

FeatureMatrix tsvd_features(const SignedDigraph& g, std::size_t rank, std::uint64_t seed,
                            RangeFinderOptions options) {
  const std::size_t n = g.node_count();
  if (rank > n) {
    throw UsageError("feature rank " + std::to_string(rank) + " exceeds node count " +
                     std::to_string(n));
  }
  const auto entries = signed_adjacency(g);
  const auto svd = randomized_svd(n, n, entries, rank, seed, options);
  FeatureMatrix x;
  x.rows = n;
  x.cols = rank;
  x.provenance = FeatureProvenance::Tsvd;
  x.values.resize(n * rank);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < rank; ++k)
      x.values[i * rank + k] = svd.u[i * rank + k] * svd.singular_values[k];
  return x;
}

}  // namespace dines
