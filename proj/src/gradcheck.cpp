#include "discogan/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "discogan/errors.hpp"
#include "discogan/rng.hpp"

namespace discogan {
namespace {

void perturb_all(MlpParams& probe, Matrix& target, Matrix& out, const ParamLoss& loss,
                 double step) {
  auto values = target.values();
  auto grad = out.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double saved = values[i];
    values[i] = saved + step;
    const double plus = loss(probe);
    values[i] = saved - step;
    const double minus = loss(probe);
    values[i] = saved;
    if (!std::isfinite(plus) || !std::isfinite(minus)) {
      throw NumericError("finite_diff_grads: loss is not finite near the probe point");
    }
    grad[i] = (plus - minus) / (2.0 * step);
  }
}

void compare_one(const Matrix& a, const Matrix& n, double rel_tol, double abs_tol,
                 GradCheckStats& stats) {
  auto av = a.values();
  auto nv = n.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    const double err = std::abs(av[i] - nv[i]);
    const double scale = std::max(std::abs(av[i]), std::abs(nv[i]));
    stats.entries += 1;
    stats.max_abs_error = std::max(stats.max_abs_error, err);
    if (scale > 0.0) stats.max_rel_error = std::max(stats.max_rel_error, err / scale);
    if (err > std::max(rel_tol * scale, abs_tol)) stats.failures += 1;
  }
}

Activation random_activation(Rng& rng) {
  switch (rng.below(4)) {
    case 0:
      return Activation::relu();
    case 1:
      return Activation::leaky_relu(rng.uniform(0.01, 0.5));
    case 2:
      return Activation::sigmoid();
    default:
      return Activation::identity();
  }
}

MlpSpec random_spec(Rng& rng) {
  MlpSpec spec;
  const std::size_t layers = 1 + rng.below(5);
  for (std::size_t i = 0; i <= layers; ++i) spec.layer_dims.push_back(2 + rng.below(15));
  for (std::size_t i = 0; i < layers; ++i) spec.activations.push_back(random_activation(rng));
  return spec;
}

Matrix uniform_matrix(std::size_t rows, std::size_t cols, double lo, double hi, Rng& rng) {
  Matrix m(rows, cols);
  for (auto& v : m.values()) v = rng.uniform(lo, hi);
  return m;
}

bool has_kink(const Activation& act) {
  return act.kind == ActivationKind::kReLU || act.kind == ActivationKind::kLeakyReLU;
}

bool near_kink(const MlpSpec& spec, const ForwardCache& cache, double margin) {
  for (std::size_t l = 0; l < spec.num_layers(); ++l) {
    if (!has_kink(spec.activations[l])) continue;
    for (double p : cache.pre[l].values()) {
      if (std::abs(p) < margin) return true;
    }
  }
  return false;
}

}  // namespace

MlpGrads finite_diff_grads(const ParamLoss& loss, const MlpParams& params, double step) {
  MlpParams probe = params;
  MlpGrads out = MlpParams::zeros_like(params);
  for (std::size_t i = 0; i < probe.weights.size(); ++i) {
    perturb_all(probe, probe.weights[i], out.weights[i], loss, step);
  }
  for (std::size_t i = 0; i < probe.biases.size(); ++i) {
    perturb_all(probe, probe.biases[i], out.biases[i], loss, step);
  }
  return out;
}

GradCheckStats compare_grads(const MlpGrads& analytic, const MlpGrads& numeric, double rel_tol,
                             double abs_tol) {
  if (!analytic.same_shape(numeric)) throw ShapeError("compare_grads: shapes differ");
  GradCheckStats stats;
  for (std::size_t i = 0; i < analytic.weights.size(); ++i) {
    compare_one(analytic.weights[i], numeric.weights[i], rel_tol, abs_tol, stats);
  }
  for (std::size_t i = 0; i < analytic.biases.size(); ++i) {
    compare_one(analytic.biases[i], numeric.biases[i], rel_tol, abs_tol, stats);
  }
  return stats;
}

GradCheckSuiteReport run_gradcheck_suite(const GradCheckSuiteConfig& config) {
  Rng rng(config.seed);
  GradCheckSuiteReport report;
  // Comfortably wider than any pre-activation shift a single probe causes.
  const double margin = 1e3 * config.step;
  for (std::size_t n = 0; n < config.networks; ++n) {
    const MlpSpec spec = random_spec(rng);
    MlpParams params = init_params(spec, rng);
    for (auto& b : params.biases) b = uniform_matrix(1, b.cols(), -0.5, 0.5, rng);
    const Matrix weights_out = uniform_matrix(config.batch, spec.output_dim(), -1.0, 1.0, rng);
    Matrix x = uniform_matrix(config.batch, spec.input_dim(), -2.0, 2.0, rng);
    ForwardResult fwd = mlp_forward(spec, params, x);
    for (int attempt = 0; attempt < 100 && near_kink(spec, fwd.cache, margin); ++attempt) {
      x = uniform_matrix(config.batch, spec.input_dim(), -2.0, 2.0, rng);
      fwd = mlp_forward(spec, params, x);
    }
    const ParamLoss loss = [&](const MlpParams& p) {
      const Matrix y = mlp_predict(spec, p, x);
      double total = 0.0;
      auto yv = y.values();
      auto cv = weights_out.values();
      for (std::size_t i = 0; i < yv.size(); ++i) total += yv[i] * cv[i];
      return total;
    };
    const MlpGrads analytic = mlp_backward(spec, params, fwd.cache, weights_out).grads;
    const MlpGrads numeric = finite_diff_grads(loss, params, config.step);
    GradCheckCase c{spec, compare_grads(analytic, numeric, config.rel_tol, config.abs_tol)};
    report.total.entries += c.stats.entries;
    report.total.failures += c.stats.failures;
    report.total.max_abs_error = std::max(report.total.max_abs_error, c.stats.max_abs_error);
    report.total.max_rel_error = std::max(report.total.max_rel_error, c.stats.max_rel_error);
    if (c.stats.failures > 0) report.failed_networks += 1;
    report.cases.push_back(std::move(c));
  }
  return report;
}

}  // namespace discogan
