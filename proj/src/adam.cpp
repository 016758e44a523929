#include "discogan/adam.hpp"

#include <cmath>

#include "discogan/errors.hpp"

namespace discogan {
namespace {

void update(Matrix& param, Matrix& m, Matrix& v, const Matrix& grad, const AdamHyper& h,
            double correction1, double correction2, bool decay) {
  auto p = param.values();
  auto mv = m.values();
  auto vv = v.values();
  auto g = grad.values();
  for (std::size_t i = 0; i < p.size(); ++i) {
    mv[i] = h.beta1 * mv[i] + (1.0 - h.beta1) * g[i];
    vv[i] = h.beta2 * vv[i] + (1.0 - h.beta2) * g[i] * g[i];
    const double m_hat = mv[i] / correction1;
    const double v_hat = vv[i] / correction2;
    double step = m_hat / (std::sqrt(v_hat) + h.epsilon);
    if (decay) step += h.weight_decay * p[i];
    p[i] -= h.lr * step;
  }
}

}  // namespace

AdamState AdamState::for_params(const MlpParams& params, const AdamHyper& hyper) {
  return AdamState{MlpParams::zeros_like(params), MlpParams::zeros_like(params), 0, hyper};
}

void adam_step(AdamState& state, MlpParams& params, const MlpGrads& grads) {
  if (!params.same_shape(grads) || !params.same_shape(state.m) ||
      !params.same_shape(state.v)) {
    throw ShapeError("adam_step: parameter, gradient and moment shapes differ");
  }
  state.t += 1;
  const double t = static_cast<double>(state.t);
  const double correction1 = 1.0 - std::pow(state.hyper.beta1, t);
  const double correction2 = 1.0 - std::pow(state.hyper.beta2, t);
  for (std::size_t i = 0; i < params.weights.size(); ++i) {
    update(params.weights[i], state.m.weights[i], state.v.weights[i], grads.weights[i],
           state.hyper, correction1, correction2, true);
  }
  for (std::size_t i = 0; i < params.biases.size(); ++i) {
    update(params.biases[i], state.m.biases[i], state.v.biases[i], grads.biases[i],
           state.hyper, correction1, correction2, false);
  }
}

}  // namespace discogan
