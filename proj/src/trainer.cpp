#include "discogan/trainer.hpp"

#include <cmath>
#include <string>

#include "discogan/losses.hpp"

namespace discogan {
namespace {

struct AdversarialTerm {
  double loss;
  Matrix d_input;  // gradient with respect to the generated points
};

// -mean log D(fake), differentiated through D back to `fake`.
AdversarialTerm generator_gan_term(const Network& disc, const Matrix& fake) {
  auto fwd = mlp_forward(disc.spec, disc.params, fake);
  const double loss = gan_generator_loss(fwd.output);
  Matrix dy = gan_generator_loss_grad(fwd.output);
  return {loss, mlp_backward_input(disc.spec, disc.params, fwd.cache, dy)};
}

struct DiscTerm {
  double loss;
  MlpGrads grads;
};

// Real and fake rows share one forward/backward pass.
DiscTerm discriminator_term(const Network& disc, const Matrix& real, const Matrix& fake) {
  const Matrix stacked = vstack(real, fake);
  auto fwd = mlp_forward(disc.spec, disc.params, stacked);
  const Matrix d_real = row_slice(fwd.output, 0, real.rows());
  const Matrix d_fake = row_slice(fwd.output, real.rows(), fake.rows());
  const double loss = gan_discriminator_loss(d_real, d_fake);
  auto g = gan_discriminator_loss_grad(d_real, d_fake);
  auto back = mlp_backward(disc.spec, disc.params, fwd.cache, vstack(g.d_real, g.d_fake));
  return {loss, std::move(back.grads)};
}

void require_points(const Matrix& m, const char* what) {
  if (m.cols() != 2 || m.rows() == 0) {
    throw ShapeError(std::string(what) + ": expected a non-empty n x 2 batch");
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericError(std::string(what) + " is not finite");
}

}  // namespace

GaussianMixture DomainConfig::build() const {
  if (layout == DomainLayout::kRow) return make_row_domain(modes, start, step, stddev);
  return make_arc_domain(modes, center, radius, angle_start, angle_end, stddev);
}

DomainConfig DomainConfig::default_a() { return DomainConfig{}; }

DomainConfig DomainConfig::default_b() {
  DomainConfig c;
  c.layout = DomainLayout::kArc;
  c.modes = 10;
  return c;
}

void TrainConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(adam.lr > 0.0)) throw ConfigError("lr must be > 0");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0)) throw ConfigError("beta1 must be in [0, 1)");
  if (!(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) throw ConfigError("beta2 must be in [0, 1)");
  if (!(adam.epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (!(adam.weight_decay >= 0.0)) throw ConfigError("weight_decay must be >= 0");
  if (log_every < 1) throw ConfigError("log_every must be >= 1");
  if (dims.gen_hidden.size() != 2) throw ConfigError("gen_hidden needs exactly 2 widths");
  if (dims.disc_hidden.size() != 4) throw ConfigError("disc_hidden needs exactly 4 widths");
  try {
    (void)domain_a.build();
    (void)domain_b.build();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("domain: ") + e.what());
  }
}

TranslationPaths translation_paths(const ModelSet& set, const Matrix& batch_a,
                                   const Matrix& batch_b) {
  TranslationPaths p;
  p.ab = translate(set.g_ab, batch_a);
  if (set.g_ba) p.aba = translate(*set.g_ba, p.ab);
  if (set.kind == VariantKind::kDiscoGan) {
    p.ba = translate(*set.g_ba, batch_b);
    p.bab = translate(set.g_ab, *p.ba);
  }
  return p;
}

GeneratorLosses generator_losses(const ModelSet& set, const Matrix& batch_a,
                                 const Matrix& batch_b) {
  require_points(batch_a, "generator_losses");
  require_points(batch_b, "generator_losses");
  GeneratorLosses out;
  const Network& g_ab = set.g_ab;

  // A side: a -> ab -> (D_B, aba)
  auto ab = mlp_forward(g_ab.spec, g_ab.params, batch_a);
  auto gan_b = generator_gan_term(set.d_b, ab.output);
  out.l_gan_b = gan_b.loss;
  Matrix d_ab = std::move(gan_b.d_input);

  if (set.g_ba) {
    const Network& g_ba = *set.g_ba;
    auto aba = mlp_forward(g_ba.spec, g_ba.params, ab.output);
    out.l_const_a = mse_distance(aba.output, batch_a);
    auto back = mlp_backward(g_ba.spec, g_ba.params, aba.cache,
                             mse_distance_grad(aba.output, batch_a));
    d_ab += back.dx;
    out.g_ba = std::move(back.grads);
  }
  out.g_ab = mlp_backward(g_ab.spec, g_ab.params, ab.cache, d_ab).grads;

  // B side (DiscoGAN): b -> ba -> (D_A, bab), same two generators.
  if (set.kind == VariantKind::kDiscoGan) {
    const Network& g_ba = *set.g_ba;
    auto ba = mlp_forward(g_ba.spec, g_ba.params, batch_b);
    auto gan_a = generator_gan_term(*set.d_a, ba.output);
    out.l_gan_a = gan_a.loss;
    Matrix d_ba = std::move(gan_a.d_input);

    auto bab = mlp_forward(g_ab.spec, g_ab.params, ba.output);
    out.l_const_b = mse_distance(bab.output, batch_b);
    auto back = mlp_backward(g_ab.spec, g_ab.params, bab.cache,
                             mse_distance_grad(bab.output, batch_b));
    d_ba += back.dx;
    out.g_ab += back.grads;
    *out.g_ba += mlp_backward(g_ba.spec, g_ba.params, ba.cache, d_ba).grads;
  }

  out.total = out.l_gan_b;
  if (out.l_const_a) out.total += *out.l_const_a;
  if (out.l_gan_a) out.total += *out.l_gan_a;
  if (out.l_const_b) out.total += *out.l_const_b;
  return out;
}

DiscriminatorLosses discriminator_losses(const ModelSet& set, const Matrix& batch_a,
                                         const Matrix& batch_b) {
  require_points(batch_a, "discriminator_losses");
  require_points(batch_b, "discriminator_losses");
  DiscriminatorLosses out;
  auto term_b = discriminator_term(set.d_b, batch_b, translate(set.g_ab, batch_a));
  out.l_d_b = term_b.loss;
  out.d_b = std::move(term_b.grads);
  out.total = out.l_d_b;
  if (set.kind == VariantKind::kDiscoGan) {
    auto term_a = discriminator_term(*set.d_a, batch_a, translate(*set.g_ba, batch_b));
    out.l_d_a = term_a.loss;
    out.d_a = std::move(term_a.grads);
    out.total = *out.l_d_a + out.l_d_b;
  }
  return out;
}

OptimizerStates OptimizerStates::for_models(const ModelSet& set, const AdamHyper& hyper) {
  OptimizerStates s{AdamState::for_params(set.g_ab.params, hyper), std::nullopt, std::nullopt,
                    AdamState::for_params(set.d_b.params, hyper)};
  if (set.g_ba) s.g_ba = AdamState::for_params(set.g_ba->params, hyper);
  if (set.d_a) s.d_a = AdamState::for_params(set.d_a->params, hyper);
  return s;
}

LossReport train_step(ModelSet& set, OptimizerStates& opt, const Matrix& batch_a,
                      const Matrix& batch_b) {
  LossReport report;

  auto disc = discriminator_losses(set, batch_a, batch_b);
  require_finite(disc.total, "discriminator loss");
  report.l_d_b = disc.l_d_b;
  report.l_d_a = disc.l_d_a;
  report.l_d_total = disc.total;
  adam_step(opt.d_b, set.d_b.params, disc.d_b);
  if (set.d_a) adam_step(*opt.d_a, set.d_a->params, *disc.d_a);

  auto gen = generator_losses(set, batch_a, batch_b);
  require_finite(gen.total, "generator loss");
  report.l_gan_b = gen.l_gan_b;
  report.l_const_a = gen.l_const_a;
  report.l_gan_a = gen.l_gan_a;
  report.l_const_b = gen.l_const_b;
  report.l_g_total = gen.total;
  adam_step(opt.g_ab, set.g_ab.params, gen.g_ab);
  if (set.g_ba) adam_step(*opt.g_ba, set.g_ba->params, *gen.g_ba);
  return report;
}

TrainingError::TrainingError(std::uint64_t iteration, const std::string& what)
    : NumericError("iteration " + std::to_string(iteration) + ": " + what),
      iteration_(iteration) {}

namespace {

TrainerState initial_state(TrainConfig config) {
  config.validate();
  Rng rng(config.seed);
  ModelSet models = build_variant(config.variant, config.dims, rng);
  OptimizerStates opt = OptimizerStates::for_models(models, config.adam);
  return TrainerState{std::move(config), std::move(models), std::move(opt), rng, 0};
}

}  // namespace

Trainer::Trainer(TrainConfig config) : Trainer(initial_state(std::move(config))) {}

Trainer::Trainer(TrainerState state)
    : state_(std::move(state)),
      mix_a_(state_.config.domain_a.build()),
      mix_b_(state_.config.domain_b.build()) {}

void Trainer::run(std::uint64_t steps) {
  const TrainConfig& cfg = state_.config;
  for (std::uint64_t k = 0; k < steps && !finished(); ++k) {
    const std::uint64_t it = state_.iteration + 1;
    Matrix batch_a = sample(mix_a_, cfg.batch_size, state_.rng).points;
    Matrix batch_b = sample(mix_b_, cfg.batch_size, state_.rng).points;
    LossReport report;
    try {
      report = train_step(state_.models, state_.optimizers, batch_a, batch_b);
    } catch (const NumericError& e) {
      throw TrainingError(it, e.what());
    }
    state_.iteration = it;
    report.iteration = it;
    last_report_ = report;
    if (it % cfg.log_every == 0 || it == cfg.iterations) history_.push_back(report);
  }
}

void Trainer::run_to_end() { run(state_.config.iterations - state_.iteration); }

TrainResult train(const TrainConfig& config) {
  Trainer trainer(config);
  trainer.run_to_end();
  return {trainer.models(), trainer.history()};
}

}  // namespace discogan
