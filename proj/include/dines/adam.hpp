#pragma once

#include <cstdint>
#include <vector>

#include "dines/tensor.hpp"

namespace dines {

struct AdamHyper {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Moment estimates for one parameter tensor.
struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::int64_t step = 0;
  AdamHyper hyper;

  static AdamState for_param(const Tensor& param, AdamHyper hyper = {});
};

/// One bias-corrected Adam update with decoupled weight decay:
///   p <- p - lr * wd * p - lr * m_hat / (sqrt(v_hat) + eps)
/// Throws UsageError when the parameter has no gradient.
void adam_step(Tensor& param, AdamState& state, double learning_rate, double weight_decay);

/// Adam over a fixed list of parameters.
class Adam {
 public:
  Adam(std::vector<Tensor> params, double learning_rate, double weight_decay,
       AdamHyper hyper = {});

  /// Updates every parameter. A parameter that did not receive a gradient
  /// this step is treated as having a zero gradient.
  void step();
  void zero_grad();

  const std::vector<Tensor>& params() const { return params_; }
  const std::vector<AdamState>& states() const { return states_; }

 private:
  std::vector<Tensor> params_;
  std::vector<AdamState> states_;
  double learning_rate_;
  double weight_decay_;
};

}  // namespace dines
