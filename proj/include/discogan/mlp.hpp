#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "discogan/matrix.hpp"
#include "discogan/rng.hpp"

namespace discogan {

enum class ActivationKind { kReLU, kLeakyReLU, kSigmoid, kIdentity };

struct Activation {
  ActivationKind kind = ActivationKind::kIdentity;
  double slope = 0.0;  // LeakyReLU only

  static Activation relu() { return {ActivationKind::kReLU, 0.0}; }
  static Activation leaky_relu(double slope) { return {ActivationKind::kLeakyReLU, slope}; }
  static Activation sigmoid() { return {ActivationKind::kSigmoid, 0.0}; }
  static Activation identity() { return {ActivationKind::kIdentity, 0.0}; }

  friend bool operator==(const Activation&, const Activation&) = default;
};

// "relu", "sigmoid", "identity", "leaky_relu:<slope>".
std::string to_string(const Activation& act);
Activation parse_activation(const std::string& text);

Matrix activate(const Activation& act, const Matrix& pre);
// Elementwise derivative at `pre` times dy. ReLU'(0) = 0.
Matrix activation_grad(const Activation& act, const Matrix& pre, const Matrix& dy);

struct MlpSpec {
  std::vector<std::size_t> layer_dims;  // input, hidden..., output
  std::vector<Activation> activations;  // one per affine layer

  std::size_t num_layers() const { return activations.size(); }
  std::size_t input_dim() const { return layer_dims.front(); }
  std::size_t output_dim() const { return layer_dims.back(); }
  // Throws ParameterError when the spec is malformed.
  void validate() const;

  friend bool operator==(const MlpSpec&, const MlpSpec&) = default;
};

// Layer i computes act_i(x * weights[i] + biases[i]); weights[i] is
// dims[i] x dims[i+1] and biases[i] is 1 x dims[i+1]. The same layout holds
// gradients and optimizer moments.
struct MlpParams {
  std::vector<Matrix> weights;
  std::vector<Matrix> biases;

  static MlpParams zeros_like(const MlpSpec& spec);
  static MlpParams zeros_like(const MlpParams& other);

  std::size_t num_values() const;
  bool all_finite() const;
  bool same_shape(const MlpParams& other) const;
  // Throws ShapeError when the shapes disagree with `spec`.
  void check_against(const MlpSpec& spec) const;

  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

using MlpGrads = MlpParams;

MlpGrads& operator+=(MlpGrads& acc, const MlpGrads& g);

struct ForwardCache {
  Matrix input;
  std::vector<Matrix> pre;   // x W + b per layer
  std::vector<Matrix> post;  // activation of pre
};

struct ForwardResult {
  Matrix output;
  ForwardCache cache;
};

struct BackwardResult {
  Matrix dx;
  MlpGrads grads;
};

ForwardResult mlp_forward(const MlpSpec& spec, const MlpParams& params, const Matrix& x);
// Forward pass without retaining intermediates.
Matrix mlp_predict(const MlpSpec& spec, const MlpParams& params, const Matrix& x);

// dy is the upstream gradient of the scalar loss with respect to the output.
// Parameter gradients sum over rows; any 1/batch factor belongs to dy.
BackwardResult mlp_backward(const MlpSpec& spec, const MlpParams& params,
                            const ForwardCache& cache, const Matrix& dy);
// Input gradient only; skips the weight/bias products.
Matrix mlp_backward_input(const MlpSpec& spec, const MlpParams& params,
                          const ForwardCache& cache, const Matrix& dy);

// Glorot-uniform weights, zero biases.
MlpParams init_params(const MlpSpec& spec, Rng& rng);

}  // namespace discogan
