#include "discogan/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "discogan/errors.hpp"

namespace discogan {
namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.all_finite()) throw NumericError(std::string(what) + ": non-finite input");
}

void require_nonempty(const Matrix& m, const char* what) {
  if (m.empty()) throw ShapeError(std::string(what) + ": empty input");
}

double clamp_prob(double p) { return std::clamp(p, kProbClamp, 1.0 - kProbClamp); }

// Keeps 1/p finite; only reached when p underflowed to exactly 0, where the
// sigmoid derivative it multiplies is 0 as well.
double floor_tiny(double p) { return std::max(p, std::numeric_limits<double>::min()); }

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double mean_neg_log(const Matrix& m, bool complement) {
  CompensatedSum sum;
  for (double p : m.values()) {
    const double c = clamp_prob(p);
    sum.add(std::log(complement ? 1.0 - c : c));
  }
  return -sum.value() / static_cast<double>(m.size());
}

}  // namespace

double mse_distance(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw ShapeError("mse_distance: shapes differ");
  require_nonempty(a, "mse_distance");
  auto av = a.values();
  auto bv = b.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) {
    const double d = av[i] - bv[i];
    sum += d * d;
  }
  return sum / static_cast<double>(av.size());
}

Matrix mse_distance_grad(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw ShapeError("mse_distance_grad: shapes differ");
  require_nonempty(a, "mse_distance_grad");
  Matrix g = a - b;
  const double scale = 2.0 / static_cast<double>(a.size());
  for (double& x : g.values()) x *= scale;
  return g;
}

double gan_generator_loss(const Matrix& d_fake) {
  require_nonempty(d_fake, "gan_generator_loss");
  require_finite(d_fake, "gan_generator_loss");
  return mean_neg_log(d_fake, false);
}

double gan_discriminator_loss(const Matrix& d_real, const Matrix& d_fake) {
  require_nonempty(d_real, "gan_discriminator_loss");
  require_nonempty(d_fake, "gan_discriminator_loss");
  require_finite(d_real, "gan_discriminator_loss");
  require_finite(d_fake, "gan_discriminator_loss");
  return mean_neg_log(d_real, false) + mean_neg_log(d_fake, true);
}

Matrix gan_generator_loss_grad(const Matrix& d_fake) {
  require_nonempty(d_fake, "gan_generator_loss_grad");
  require_finite(d_fake, "gan_generator_loss_grad");
  Matrix g = d_fake;
  const double n = static_cast<double>(d_fake.size());
  for (double& p : g.values()) p = -1.0 / (n * floor_tiny(p));
  return g;
}

DiscriminatorLossGrad gan_discriminator_loss_grad(const Matrix& d_real, const Matrix& d_fake) {
  require_nonempty(d_real, "gan_discriminator_loss_grad");
  require_nonempty(d_fake, "gan_discriminator_loss_grad");
  require_finite(d_real, "gan_discriminator_loss_grad");
  require_finite(d_fake, "gan_discriminator_loss_grad");
  DiscriminatorLossGrad g{d_real, d_fake};
  const double n_real = static_cast<double>(d_real.size());
  const double n_fake = static_cast<double>(d_fake.size());
  for (double& p : g.d_real.values()) p = -1.0 / (n_real * floor_tiny(p));
  for (double& p : g.d_fake.values()) p = 1.0 / (n_fake * floor_tiny(1.0 - p));
  return g;
}

}  // namespace discogan
