#include "discogan/mlp.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "discogan/errors.hpp"

namespace discogan {
namespace {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void check_cache(const MlpSpec& spec, const ForwardCache& cache, const Matrix& dy) {
  const std::size_t n = spec.num_layers();
  if (cache.pre.size() != n || cache.post.size() != n) {
    throw ShapeError("mlp_backward: cache holds " + std::to_string(cache.pre.size()) +
                     " layers, spec has " + std::to_string(n));
  }
  if (!dy.same_shape(cache.post.back())) {
    throw ShapeError("mlp_backward: upstream gradient is " + std::to_string(dy.rows()) + "x" +
                     std::to_string(dy.cols()) + ", forward output is " +
                     std::to_string(cache.post.back().rows()) + "x" +
                     std::to_string(cache.post.back().cols()));
  }
}

}  // namespace

std::string to_string(const Activation& act) {
  switch (act.kind) {
    case ActivationKind::kReLU:
      return "relu";
    case ActivationKind::kSigmoid:
      return "sigmoid";
    case ActivationKind::kIdentity:
      return "identity";
    case ActivationKind::kLeakyReLU: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "leaky_relu:%.17g", act.slope);
      return buf;
    }
  }
  return "?";
}

Activation parse_activation(const std::string& text) {
  if (text == "relu") return Activation::relu();
  if (text == "sigmoid") return Activation::sigmoid();
  if (text == "identity") return Activation::identity();
  const std::string prefix = "leaky_relu:";
  if (text.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    double slope = 0.0;
    try {
      slope = std::stod(text.substr(prefix.size()), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() - prefix.size()) {
      throw ParameterError("bad leaky_relu slope in '" + text + "'");
    }
    return Activation::leaky_relu(slope);
  }
  throw ParameterError("unknown activation '" + text + "'");
}

Matrix activate(const Activation& act, const Matrix& pre) {
  Matrix out = pre;
  auto v = out.values();
  switch (act.kind) {
    case ActivationKind::kReLU:
      for (double& x : v) x = x > 0.0 ? x : 0.0;
      break;
    case ActivationKind::kLeakyReLU:
      for (double& x : v) x = x > 0.0 ? x : act.slope * x;
      break;
    case ActivationKind::kSigmoid:
      for (double& x : v) x = sigmoid(x);
      break;
    case ActivationKind::kIdentity:
      break;
  }
  return out;
}

Matrix activation_grad(const Activation& act, const Matrix& pre, const Matrix& dy) {
  if (!pre.same_shape(dy)) throw ShapeError("activation_grad: pre and dy differ in shape");
  Matrix out = dy;
  auto g = out.values();
  auto p = pre.values();
  switch (act.kind) {
    case ActivationKind::kReLU:
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(p[i] > 0.0)) g[i] = 0.0;
      }
      break;
    case ActivationKind::kLeakyReLU:
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(p[i] > 0.0)) g[i] *= act.slope;
      }
      break;
    case ActivationKind::kSigmoid:
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double s = sigmoid(p[i]);
        g[i] *= s * (1.0 - s);
      }
      break;
    case ActivationKind::kIdentity:
      break;
  }
  return out;
}

void MlpSpec::validate() const {
  if (layer_dims.size() < 2) throw ParameterError("MlpSpec: need at least input and output dims");
  if (activations.size() != layer_dims.size() - 1) {
    throw ParameterError("MlpSpec: " + std::to_string(activations.size()) +
                         " activations for " + std::to_string(layer_dims.size() - 1) +
                         " layers");
  }
  for (std::size_t d : layer_dims) {
    if (d == 0) throw ParameterError("MlpSpec: zero-width layer");
  }
  for (const auto& act : activations) {
    if (act.kind == ActivationKind::kLeakyReLU && !(act.slope > 0.0 && act.slope < 1.0)) {
      throw ParameterError("MlpSpec: LeakyReLU slope must lie in (0, 1)");
    }
  }
}

MlpParams MlpParams::zeros_like(const MlpSpec& spec) {
  MlpParams p;
  for (std::size_t i = 0; i + 1 < spec.layer_dims.size(); ++i) {
    p.weights.emplace_back(spec.layer_dims[i], spec.layer_dims[i + 1]);
    p.biases.emplace_back(1, spec.layer_dims[i + 1]);
  }
  return p;
}

MlpParams MlpParams::zeros_like(const MlpParams& other) {
  MlpParams p;
  for (const auto& w : other.weights) p.weights.emplace_back(w.rows(), w.cols());
  for (const auto& b : other.biases) p.biases.emplace_back(b.rows(), b.cols());
  return p;
}

std::size_t MlpParams::num_values() const {
  std::size_t n = 0;
  for (const auto& w : weights) n += w.size();
  for (const auto& b : biases) n += b.size();
  return n;
}

bool MlpParams::all_finite() const {
  for (const auto& w : weights) {
    if (!w.all_finite()) return false;
  }
  for (const auto& b : biases) {
    if (!b.all_finite()) return false;
  }
  return true;
}

bool MlpParams::same_shape(const MlpParams& other) const {
  if (weights.size() != other.weights.size() || biases.size() != other.biases.size()) {
    return false;
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!weights[i].same_shape(other.weights[i])) return false;
  }
  for (std::size_t i = 0; i < biases.size(); ++i) {
    if (!biases[i].same_shape(other.biases[i])) return false;
  }
  return true;
}

void MlpParams::check_against(const MlpSpec& spec) const {
  const std::size_t n = spec.num_layers();
  if (weights.size() != n || biases.size() != n) {
    throw ShapeError("MlpParams: layer count does not match spec");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t in = spec.layer_dims[i];
    const std::size_t out = spec.layer_dims[i + 1];
    if (weights[i].rows() != in || weights[i].cols() != out || biases[i].rows() != 1 ||
        biases[i].cols() != out) {
      throw ShapeError("MlpParams: layer " + std::to_string(i) + " shape does not match spec");
    }
  }
}

MlpGrads& operator+=(MlpGrads& acc, const MlpGrads& g) {
  if (!acc.same_shape(g)) throw ShapeError("gradient accumulation: shapes differ");
  for (std::size_t i = 0; i < acc.weights.size(); ++i) acc.weights[i] += g.weights[i];
  for (std::size_t i = 0; i < acc.biases.size(); ++i) acc.biases[i] += g.biases[i];
  return acc;
}

ForwardResult mlp_forward(const MlpSpec& spec, const MlpParams& params, const Matrix& x) {
  if (x.cols() != spec.input_dim()) {
    throw ShapeError("mlp_forward: input has " + std::to_string(x.cols()) +
                     " columns, network expects " + std::to_string(spec.input_dim()));
  }
  params.check_against(spec);
  ForwardResult result;
  result.cache.input = x;
  const Matrix* h = &x;
  for (std::size_t i = 0; i < spec.num_layers(); ++i) {
    Matrix pre = matmul(*h, params.weights[i]);
    add_row_broadcast(pre, params.biases[i]);
    result.cache.post.push_back(activate(spec.activations[i], pre));
    result.cache.pre.push_back(std::move(pre));
    h = &result.cache.post.back();
  }
  result.output = result.cache.post.back();
  return result;
}

Matrix mlp_predict(const MlpSpec& spec, const MlpParams& params, const Matrix& x) {
  if (x.cols() != spec.input_dim()) {
    throw ShapeError("mlp_predict: input has " + std::to_string(x.cols()) +
                     " columns, network expects " + std::to_string(spec.input_dim()));
  }
  params.check_against(spec);
  Matrix h = x;
  for (std::size_t i = 0; i < spec.num_layers(); ++i) {
    Matrix pre = matmul(h, params.weights[i]);
    add_row_broadcast(pre, params.biases[i]);
    h = activate(spec.activations[i], pre);
  }
  return h;
}

namespace {

template <bool kWithParams>
BackwardResult backward_impl(const MlpSpec& spec, const MlpParams& params,
                             const ForwardCache& cache, const Matrix& dy) {
  check_cache(spec, cache, dy);
  params.check_against(spec);
  BackwardResult result;
  if constexpr (kWithParams) result.grads = MlpParams::zeros_like(spec);
  Matrix upstream = dy;
  for (std::size_t i = spec.num_layers(); i-- > 0;) {
    Matrix dpre = activation_grad(spec.activations[i], cache.pre[i], upstream);
    const Matrix& layer_in = i == 0 ? cache.input : cache.post[i - 1];
    if constexpr (kWithParams) {
      result.grads.weights[i] = matmul_at_b(layer_in, dpre);
      result.grads.biases[i] = column_sums(dpre);
    }
    upstream = matmul_a_bt(dpre, params.weights[i]);
  }
  result.dx = std::move(upstream);
  return result;
}

}  // namespace

BackwardResult mlp_backward(const MlpSpec& spec, const MlpParams& params,
                            const ForwardCache& cache, const Matrix& dy) {
  return backward_impl<true>(spec, params, cache, dy);
}

Matrix mlp_backward_input(const MlpSpec& spec, const MlpParams& params,
                          const ForwardCache& cache, const Matrix& dy) {
  return backward_impl<false>(spec, params, cache, dy).dx;
}

MlpParams init_params(const MlpSpec& spec, Rng& rng) {
  spec.validate();
  MlpParams p = MlpParams::zeros_like(spec);
  for (std::size_t i = 0; i < spec.num_layers(); ++i) {
    const double fan_in = static_cast<double>(spec.layer_dims[i]);
    const double fan_out = static_cast<double>(spec.layer_dims[i + 1]);
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& w : p.weights[i].values()) {
      // uniform() is in [0, 1); reject the single endpoint that maps to -bound.
      double u;
      do {
        u = rng.uniform(-bound, bound);
      } while (u == -bound);
      w = u;
    }
  }
  return p;
}

}  // namespace discogan
