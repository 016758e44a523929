#pragma once

#include <cstdint>
#include <functional>

#include "discogan/mlp.hpp"

namespace discogan {

using ParamLoss = std::function<double(const MlpParams&)>;

// Central differences (L(p + h) - L(p - h)) / 2h for every parameter entry.
MlpGrads finite_diff_grads(const ParamLoss& loss, const MlpParams& params, double step);

struct GradCheckStats {
  std::size_t entries = 0;
  std::size_t failures = 0;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
};

// An entry passes when |a - n| <= max(rel_tol * max(|a|, |n|), abs_tol).
GradCheckStats compare_grads(const MlpGrads& analytic, const MlpGrads& numeric,
                             double rel_tol, double abs_tol);

struct GradCheckSuiteConfig {
  std::size_t networks = 100;
  std::uint64_t seed = 1;
  std::size_t batch = 4;
  double step = 1e-5;
  double rel_tol = 1e-4;
  double abs_tol = 1e-7;
};

struct GradCheckCase {
  MlpSpec spec;
  GradCheckStats stats;
};

struct GradCheckSuiteReport {
  std::vector<GradCheckCase> cases;
  GradCheckStats total;
  std::size_t failed_networks = 0;

  bool passed() const { return failed_networks == 0; }
};

// Random nets with widths in 2..16, 1 to 5 layers and every activation kind.
// The loss is a fixed random linear functional of the output. Inputs whose
// pre-activations sit within a probe distance of a ReLU kink are redrawn.
GradCheckSuiteReport run_gradcheck_suite(const GradCheckSuiteConfig& config);

}  // namespace discogan
