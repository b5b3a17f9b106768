#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dines/tensor.hpp"

namespace dines {

inline constexpr double kLeakyReluSlope = 0.01;
inline constexpr double kNormEpsilon = 1e-12;
inline constexpr double kProbabilityClamp = 1e-12;

// Linear algebra.
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);
/// Adds a length-c bias to every row of an r x c matrix.
Tensor add_row(const Tensor& matrix, const Tensor& bias);
/// Inner product of two equal-length tensors, as a scalar.
Tensor dot(const Tensor& a, const Tensor& b);

// Elementwise.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);
Tensor tanh(const Tensor& a);
Tensor sigmoid(const Tensor& a);
Tensor leaky_relu(const Tensor& a, double slope = kLeakyReluSlope);

// Reductions.
Tensor sum(const Tensor& a);
Tensor mean(const Tensor& a);
/// Column-wise maximum of a non-empty matrix, as a vector.
Tensor max_rows(const Tensor& m);

/// v / max(|v|, 1e-12). A vector with norm below the guard maps to zero.
Tensor l2_normalize(const Tensor& v);
/// Row-wise l2_normalize of a matrix.
Tensor l2_normalize_rows(const Tensor& m);
/// Max-shifted softmax of a non-empty vector.
Tensor softmax(const Tensor& v);

// Layout.
Tensor reshape(const Tensor& a, Shape shape);
/// Joins vectors end to end.
Tensor concat(std::span<const Tensor> parts);
/// Joins matrices with equal row counts side by side.
Tensor concat_cols(std::span<const Tensor> parts);
/// Row r of a matrix as a vector.
Tensor row(const Tensor& m, std::size_t r);
/// Columns [begin, begin + count) of a matrix.
Tensor slice_cols(const Tensor& m, std::size_t begin, std::size_t count);
/// Stacks equal-length vectors into a matrix.
Tensor stack_rows(std::span<const Tensor> rows);

// Losses.
/// -(1/|E|) sum[y log p + (1-y) log(1-p)], p clamped to [1e-12, 1-1e-12].
Tensor bce_loss(const Tensor& probabilities, std::span<const double> labels);
/// Mean over rows of -log softmax(logits[r])[labels[r]].
Tensor cross_entropy_rows(const Tensor& logits, std::span<const std::size_t> labels);

}  // namespace dines
