#pragma once

#include <cstdint>

#include "discogan/mlp.hpp"

namespace discogan {

struct AdamHyper {
  double lr = 2e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 1e-4;

  friend bool operator==(const AdamHyper&, const AdamHyper&) = default;
};

struct AdamState {
  MlpParams m;
  MlpParams v;
  std::uint64_t t = 0;
  AdamHyper hyper;

  static AdamState for_params(const MlpParams& params, const AdamHyper& hyper);

  friend bool operator==(const AdamState&, const AdamState&) = default;
};

// Bias-corrected Adam. Weight decay is decoupled (lr * weight_decay * w
// subtracted from the pre-step weight) and skips biases.
void adam_step(AdamState& state, MlpParams& params, const MlpGrads& grads);

}  // namespace discogan
