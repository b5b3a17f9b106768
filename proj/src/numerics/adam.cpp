#include "dines/adam.hpp"

#include <cmath>

#include "dines/error.hpp"

namespace dines {

AdamState AdamState::for_param(const Tensor& param, AdamHyper hyper) {
  AdamState s;
  s.first_moment.assign(param.size(), 0.0);
  s.second_moment.assign(param.size(), 0.0);
  s.hyper = hyper;
  return s;
}

void adam_step(Tensor& param, AdamState& state, double learning_rate, double weight_decay) {
  if (!param.has_grad()) throw UsageError("adam_step on a parameter without gradient");
  if (state.first_moment.size() != param.size() || state.second_moment.size() != param.size()) {
    throw DimensionError("adam_step: moment buffers do not match parameter " +
                         shape_string(param.shape()));
  }
  ++state.step;
  const auto& h = state.hyper;
  const double c1 = 1.0 - std::pow(h.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(h.beta2, static_cast<double>(state.step));
  auto p = param.mutable_values();
  auto g = param.grad();
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto& m = state.first_moment[i];
    auto& v = state.second_moment[i];
    m = h.beta1 * m + (1.0 - h.beta1) * g[i];
    v = h.beta2 * v + (1.0 - h.beta2) * g[i] * g[i];
    const double m_hat = m / c1;
    const double v_hat = v / c2;
    p[i] -= learning_rate * weight_decay * p[i];
    p[i] -= learning_rate * m_hat / (std::sqrt(v_hat) + h.epsilon);
    if (!std::isfinite(p[i])) throw NumericError("adam_step produced a non-finite parameter");
  }
}

Adam::Adam(std::vector<Tensor> params, double learning_rate, double weight_decay,
           AdamHyper hyper)
    : params_(std::move(params)), learning_rate_(learning_rate), weight_decay_(weight_decay) {
  states_.reserve(params_.size());
  for (const auto& p : params_) states_.push_back(AdamState::for_param(p, hyper));
}

void Adam::step() {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    params_[i].mutable_grad();
    adam_step(params_[i], states_[i], learning_rate_, weight_decay_);
  }
}

void Adam::zero_grad() {
  for (auto& p : params_) p.zero_grad();
}

}  // namespace dines
