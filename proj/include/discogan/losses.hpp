#pragma once

#include "discogan/matrix.hpp"

namespace discogan {

// Discriminator outputs are clamped to [kProbClamp, 1 - kProbClamp] before
// any log is taken.
inline constexpr double kProbClamp = 1e-7;

// Mean over all entries of (a - b)^2.
double mse_distance(const Matrix& a, const Matrix& b);
// d/da of mse_distance(a, b).
Matrix mse_distance_grad(const Matrix& a, const Matrix& b);

// -mean(log d_fake)
double gan_generator_loss(const Matrix& d_fake);
// -mean(log d_real) - mean(log(1 - d_fake))
double gan_discriminator_loss(const Matrix& d_real, const Matrix& d_fake);

// Loss gradients with respect to the discriminator outputs. The clamp acts on
// the loss value only: derivatives are taken at the raw output, so a
// saturated sigmoid still passes its (1 - s) or s factor back to the logit.
Matrix gan_generator_loss_grad(const Matrix& d_fake);
struct DiscriminatorLossGrad {
  Matrix d_real;
  Matrix d_fake;
};
DiscriminatorLossGrad gan_discriminator_loss_grad(const Matrix& d_real, const Matrix& d_fake);

}  // namespace discogan
