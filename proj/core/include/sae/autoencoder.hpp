#pragma once

#include <cstddef>
#include <span>

#include "sae/linalg.hpp"
#include "sae/rng.hpp"

namespace sae {

// Hidden activations are clamped to [kActivationClamp, 1 - kActivationClamp]
// before entering the KL penalty so a dead or saturated unit stays finite.
inline constexpr double kActivationClamp = 1e-6;

struct SparsityConfig {
  double rho = 0.05;  // target mean activation, in (0, 1)
  double beta = 0.1;  // penalty weight, >= 0

  void validate() const;

  friend bool operator==(const SparsityConfig&, const SparsityConfig&) = default;
};

struct SgdConfig {
  double learning_rate = 0.5;
  double momentum = 0.9;  // 1.0 is accepted: velocity never decays
  std::size_t batch_size = 10;
  std::size_t epochs = 100;

  void validate() const;

  friend bool operator==(const SgdConfig&, const SgdConfig&) = default;
};

// One sparse autoencoder: sigmoid encoder (hidden x visible) and an untied
// sigmoid decoder (visible x hidden).
struct AutoencoderParams {
  Matrix w_enc;
  Vector b_enc;
  Matrix w_dec;
  Vector b_dec;

  std::size_t visible() const noexcept { return w_enc.cols(); }
  std::size_t hidden() const noexcept { return w_enc.rows(); }

  // Throws DimensionError if the four blocks do not fit together.
  void validate() const;

  static AutoencoderParams zeros(std::size_t visible, std::size_t hidden);
  // Uniform +-1/sqrt(fan_in) weights, zero biases. Encoder is drawn before decoder.
  static AutoencoderParams random(std::size_t visible, std::size_t hidden, SeededRng& rng);

  friend bool operator==(const AutoencoderParams&, const AutoencoderParams&) = default;
};

// this += scale * other, blockwise. Shapes must agree.
void add_scaled(AutoencoderParams& dst, double scale, const AutoencoderParams& other);

Vector encode(const AutoencoderParams& p, std::span<const double> x);
Vector decode(const AutoencoderParams& p, std::span<const double> h);

// KL(rho || q) for Bernoulli means, q clamped as above.
double kl_divergence(double rho, double q) noexcept;
// d/dq of kl_divergence(rho, clamp(q)); zero where the clamp is active.
double kl_derivative(double rho, double q) noexcept;

// (1/2n) sum ||decode(encode(x)) - x||^2 + beta * sum_j KL(rho || mean_j).
double ae_loss(const AutoencoderParams& p, std::span<const Vector> batch, const SparsityConfig& s);

// Analytic gradient of ae_loss, same block layout as the parameters.
AutoencoderParams ae_gradient(const AutoencoderParams& p, std::span<const Vector> batch,
                              const SparsityConfig& s);

// Loss and gradient from a single forward pass. `grad` must already have p's shape.
double ae_loss_and_gradient(const AutoencoderParams& p, std::span<const Vector> batch,
                            const SparsityConfig& s, AutoencoderParams& grad);

// One pass of mini-batch SGD with classical momentum over a shuffled copy of
// the data order. The final batch may be short. `velocity` carries over
// between epochs and must have p's shape.
AutoencoderParams ae_train_epoch(AutoencoderParams p, std::span<const Vector> data,
                                 const SparsityConfig& s, const SgdConfig& o,
                                 AutoencoderParams& velocity, SeededRng& rng);

}  // namespace sae
