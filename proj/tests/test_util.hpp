#pragma once

#include <filesystem>
#include <string>

#include "discogan/matrix.hpp"
#include "discogan/models.hpp"
#include "discogan/rng.hpp"

namespace discogan::testing {

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double lo = -1.0,
                            double hi = 1.0) {
  Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.uniform(lo, hi);
  return m;
}

// 2 -> 2 single identity layer with W = I.
inline Network identity_generator() {
  MlpSpec spec{{2, 2}, {Activation::identity()}};
  MlpParams p = MlpParams::zeros_like(spec);
  p.weights[0] = Matrix{{1, 0}, {0, 1}};
  return {spec, p};
}

// 2 -> 2 affine map x * w + b, identity activation.
inline Network affine_generator(const Matrix& w, const Matrix& b) {
  MlpSpec spec{{2, 2}, {Activation::identity()}};
  return {spec, MlpParams{{w}, {b}}};
}

inline void zero_params(Network& net) {
  for (auto& w : net.params.weights) {
    for (double& v : w.values()) v = 0.0;
  }
  for (auto& b : net.params.biases) {
    for (double& v : b.values()) v = 0.0;
  }
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("discogan_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace discogan::testing
