#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "discogan/adam.hpp"
#include "discogan/domains.hpp"
#include "discogan/errors.hpp"
#include "discogan/models.hpp"

namespace discogan {

enum class DomainLayout { kRow, kArc };

// Serializable description of one Gaussian-mixture domain. Row layouts use
// start/step, arc layouts use center/radius/angles.
struct DomainConfig {
  DomainLayout layout = DomainLayout::kRow;
  std::size_t modes = 5;
  double stddev = 0.1;
  Point2 start{1.0, 0.5};
  Point2 step{1.0, 0.0};
  Point2 center{3.0, 0.5};
  double radius = 2.0;
  double angle_start = 0.0;
  double angle_end = 3.141592653589793;

  GaussianMixture build() const;

  // Five modes in a row at y = 0.5.
  static DomainConfig default_a();
  // Ten modes on the upper half circle of radius 2 around (3, 0.5).
  static DomainConfig default_b();

  friend bool operator==(const DomainConfig&, const DomainConfig&) = default;
};

enum class ReconDistance { kMse };

struct TrainConfig {
  VariantKind variant = VariantKind::kDiscoGan;
  std::uint64_t iterations = 50000;
  std::size_t batch_size = 200;
  AdamHyper adam;
  std::uint64_t seed = 1;
  NetDims dims;
  DomainConfig domain_a = DomainConfig::default_a();
  DomainConfig domain_b = DomainConfig::default_b();
  ReconDistance recon_distance = ReconDistance::kMse;
  std::uint64_t log_every = 500;

  // Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Terms a variant does not have stay empty.
struct LossReport {
  std::uint64_t iteration = 0;
  std::optional<double> l_gan_b;
  std::optional<double> l_const_a;
  std::optional<double> l_gan_a;
  std::optional<double> l_const_b;
  double l_g_total = 0.0;
  std::optional<double> l_d_a;
  std::optional<double> l_d_b;
  double l_d_total = 0.0;

  friend bool operator==(const LossReport&, const LossReport&) = default;
};

using History = std::vector<LossReport>;

// Every intermediate of one generator pass. For DiscoGAN the B-side cycle
// (ba, bab) runs through the same g_ba/g_ab slots as the A-side.
struct TranslationPaths {
  Matrix ab;
  std::optional<Matrix> aba;
  std::optional<Matrix> ba;
  std::optional<Matrix> bab;
};
TranslationPaths translation_paths(const ModelSet& set, const Matrix& batch_a,
                                   const Matrix& batch_b);

struct GeneratorLosses {
  double total = 0.0;
  double l_gan_b = 0.0;
  std::optional<double> l_const_a;
  std::optional<double> l_gan_a;
  std::optional<double> l_const_b;
  MlpGrads g_ab;
  std::optional<MlpGrads> g_ba;
};

// Discriminators are read, never differentiated with respect to their
// parameters.
GeneratorLosses generator_losses(const ModelSet& set, const Matrix& batch_a,
                                 const Matrix& batch_b);

struct DiscriminatorLosses {
  double total = 0.0;
  double l_d_b = 0.0;
  std::optional<double> l_d_a;
  MlpGrads d_b;
  std::optional<MlpGrads> d_a;
};

// Fake samples are generator outputs treated as constants.
DiscriminatorLosses discriminator_losses(const ModelSet& set, const Matrix& batch_a,
                                         const Matrix& batch_b);

struct OptimizerStates {
  AdamState g_ab;
  std::optional<AdamState> g_ba;
  std::optional<AdamState> d_a;
  AdamState d_b;

  static OptimizerStates for_models(const ModelSet& set, const AdamHyper& hyper);

  friend bool operator==(const OptimizerStates&, const OptimizerStates&) = default;
};

// One discriminator update then one generator update on the same batches.
// Throws NumericError when a loss is not finite.
LossReport train_step(ModelSet& set, OptimizerStates& opt, const Matrix& batch_a,
                      const Matrix& batch_b);

class TrainingError : public NumericError {
 public:
  TrainingError(std::uint64_t iteration, const std::string& what);
  std::uint64_t iteration() const { return iteration_; }

 private:
  std::uint64_t iteration_;
};

// Everything needed to continue a run bit-for-bit.
struct TrainerState {
  TrainConfig config;
  ModelSet models;
  OptimizerStates optimizers;
  Rng rng;
  std::uint64_t iteration = 0;

  friend bool operator==(const TrainerState&, const TrainerState&) = default;
};

class Trainer {
 public:
  // Seeds the Rng, initialises networks, then draws minibatches from the
  // same stream.
  explicit Trainer(TrainConfig config);
  explicit Trainer(TrainerState state);

  // Runs up to `steps` more iterations, stopping at config.iterations.
  // Logs every log_every-th iteration and always the configured final one.
  void run(std::uint64_t steps);
  void run_to_end();

  const TrainerState& state() const { return state_; }
  const ModelSet& models() const { return state_.models; }
  const History& history() const { return history_; }
  // Losses of the most recent step, logged or not.
  const std::optional<LossReport>& last_report() const { return last_report_; }
  std::uint64_t iteration() const { return state_.iteration; }
  bool finished() const { return state_.iteration >= state_.config.iterations; }
  const GaussianMixture& mix_a() const { return mix_a_; }
  const GaussianMixture& mix_b() const { return mix_b_; }

 private:
  TrainerState state_;
  GaussianMixture mix_a_;
  GaussianMixture mix_b_;
  History history_;
  std::optional<LossReport> last_report_;
};

struct TrainResult {
  ModelSet models;
  History history;
};
TrainResult train(const TrainConfig& config);

}  // namespace discogan
