#include "sae/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "sae/error.hpp"

namespace sae {

void SparsityConfig::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ConfigError("sparsity target rho must lie in (0, 1), got " + std::to_string(rho));
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ConfigError("sparsity weight beta must be >= 0, got " + std::to_string(beta));
  }
}

void SgdConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be >= 0, got " + std::to_string(learning_rate));
  }
  if (!(momentum >= 0.0 && momentum <= 1.0)) {
    throw ConfigError("momentum must lie in [0, 1], got " + std::to_string(momentum));
  }
  if (batch_size == 0) throw ConfigError("batch size must be >= 1");
  if (epochs == 0) throw ConfigError("epoch count must be >= 1");
}

void AutoencoderParams::validate() const {
  const auto fail = [&](const std::string& what) {
    throw DimensionError("autoencoder blocks do not fit: " + what + " (w_enc " + w_enc.shape() +
                         ", b_enc " + std::to_string(b_enc.size()) + ", w_dec " +
                         w_dec.shape() + ", b_dec " + std::to_string(b_dec.size()) + ")");
  };
  if (w_enc.rows() != b_enc.size()) fail("encoder bias length");
  if (w_dec.rows() != b_dec.size()) fail("decoder bias length");
  if (w_enc.cols() != w_dec.rows()) fail("visible size");
  if (w_enc.rows() != w_dec.cols()) fail("hidden size");
}

AutoencoderParams AutoencoderParams::zeros(std::size_t visible, std::size_t hidden) {
  return {Matrix(hidden, visible), Vector(hidden, 0.0), Matrix(visible, hidden),
          Vector(visible, 0.0)};
}

AutoencoderParams AutoencoderParams::random(std::size_t visible, std::size_t hidden,
                                            SeededRng& rng) {
  Matrix w_enc = init_weights(hidden, visible, rng);
  Matrix w_dec = init_weights(visible, hidden, rng);
  return {std::move(w_enc), Vector(hidden, 0.0), std::move(w_dec), Vector(visible, 0.0)};
}

namespace {

void add_scaled(std::span<double> dst, double scale, std::span<const double> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
}

void check_batch(const AutoencoderParams& p, std::span<const Vector> batch) {
  if (batch.empty()) throw DataError("autoencoder batch is empty");
  for (const Vector& x : batch) {
    if (x.size() != p.visible()) {
      throw DimensionError("autoencoder expects inputs of length " +
                           std::to_string(p.visible()) + ", got " + std::to_string(x.size()));
    }
  }
}

void check_same_shape(const AutoencoderParams& a, const AutoencoderParams& b) {
  if (a.w_enc.rows() != b.w_enc.rows() || a.w_enc.cols() != b.w_enc.cols()) {
    throw DimensionError("parameter blocks differ in shape: " + a.w_enc.shape() + " vs " +
                         b.w_enc.shape());
  }
}

}  // namespace

void add_scaled(AutoencoderParams& dst, double scale, const AutoencoderParams& other) {
  check_same_shape(dst, other);
  add_scaled(dst.w_enc.data(), scale, other.w_enc.data());
  add_scaled(dst.b_enc, scale, other.b_enc);
  add_scaled(dst.w_dec.data(), scale, other.w_dec.data());
  add_scaled(dst.b_dec, scale, other.b_dec);
}

Vector encode(const AutoencoderParams& p, std::span<const double> x) {
  Vector h = affine(p.w_enc, x, p.b_enc);
  sigmoid_inplace(h);
  return h;
}

Vector decode(const AutoencoderParams& p, std::span<const double> h) {
  Vector y = affine(p.w_dec, h, p.b_dec);
  sigmoid_inplace(y);
  return y;
}

double kl_divergence(double rho, double q) noexcept {
  q = std::clamp(q, kActivationClamp, 1.0 - kActivationClamp);
  return rho * std::log(rho / q) + (1.0 - rho) * std::log((1.0 - rho) / (1.0 - q));
}

double kl_derivative(double rho, double q) noexcept {
  if (q < kActivationClamp || q > 1.0 - kActivationClamp) return 0.0;
  return -rho / q + (1.0 - rho) / (1.0 - q);
}

namespace {

// Shared kernel; `input(i)` yields the i-th example of an n-example batch.
template <typename Input>
double loss_and_gradient(const AutoencoderParams& p, std::size_t n, Input&& input,
                         const SparsityConfig& s, AutoencoderParams& grad) {
  const std::size_t hidden = p.hidden();
  const std::size_t visible = p.visible();
  const double inv_n = 1.0 / static_cast<double>(n);

  std::ranges::fill(grad.w_enc.data(), 0.0);
  std::ranges::fill(grad.b_enc, 0.0);
  std::ranges::fill(grad.w_dec.data(), 0.0);
  std::ranges::fill(grad.b_dec, 0.0);

  // Hidden activations for the whole batch are needed before backprop because
  // the sparsity term couples examples through the batch mean.
  Matrix acts(n, hidden);
  Vector mean_act(hidden, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto h = acts.row(i);
    affine_into(p.w_enc, input(i), p.b_enc, h);
    sigmoid_inplace(h);
    for (std::size_t j = 0; j < hidden; ++j) mean_act[j] += h[j];
  }
  for (double& m : mean_act) m *= inv_n;

  double loss = 0.0;
  Vector sparse_grad(hidden, 0.0);
  if (s.beta > 0.0) {
    for (std::size_t j = 0; j < hidden; ++j) {
      loss += s.beta * kl_divergence(s.rho, mean_act[j]);
      sparse_grad[j] = s.beta * kl_derivative(s.rho, mean_act[j]) * inv_n;
    }
  }

  Vector y(visible), delta_out(visible), back(hidden), delta_hidden(hidden);
  double recon = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const double> x = input(i);
    auto h = acts.row(i);
    affine_into(p.w_dec, h, p.b_dec, y);
    sigmoid_inplace(y);
    for (std::size_t v = 0; v < visible; ++v) {
      const double err = y[v] - x[v];
      recon += err * err;
      delta_out[v] = err * y[v] * (1.0 - y[v]) * inv_n;
    }
    for (std::size_t v = 0; v < visible; ++v) {
      auto g = grad.w_dec.row(v);
      const double d = delta_out[v];
      for (std::size_t j = 0; j < hidden; ++j) g[j] += d * h[j];
      grad.b_dec[v] += d;
    }
    transposed_times_into(p.w_dec, delta_out, back);
    for (std::size_t j = 0; j < hidden; ++j) {
      delta_hidden[j] = (back[j] + sparse_grad[j]) * h[j] * (1.0 - h[j]);
    }
    for (std::size_t j = 0; j < hidden; ++j) {
      auto g = grad.w_enc.row(j);
      const double d = delta_hidden[j];
      for (std::size_t v = 0; v < visible; ++v) g[v] += d * x[v];
      grad.b_enc[j] += d;
    }
  }
  return loss + 0.5 * recon * inv_n;
}

void momentum_step(std::span<double> velocity, std::span<const double> grad, const SgdConfig& o) {
  for (std::size_t i = 0; i < velocity.size(); ++i) {
    velocity[i] = o.momentum * velocity[i] - o.learning_rate * grad[i];
  }
}

}  // namespace

double ae_loss_and_gradient(const AutoencoderParams& p, std::span<const Vector> batch,
                            const SparsityConfig& s, AutoencoderParams& grad) {
  check_batch(p, batch);
  check_same_shape(p, grad);
  return loss_and_gradient(
      p, batch.size(), [&](std::size_t i) { return std::span<const double>(batch[i]); }, s,
      grad);
}

double ae_loss(const AutoencoderParams& p, std::span<const Vector> batch,
               const SparsityConfig& s) {
  check_batch(p, batch);
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  Vector mean_act(p.hidden(), 0.0);
  double recon = 0.0;
  for (const Vector& x : batch) {
    const Vector h = encode(p, x);
    const Vector y = decode(p, h);
    for (std::size_t j = 0; j < h.size(); ++j) mean_act[j] += h[j];
    for (std::size_t v = 0; v < y.size(); ++v) recon += (y[v] - x[v]) * (y[v] - x[v]);
  }
  double penalty = 0.0;
  if (s.beta > 0.0) {
    for (double m : mean_act) penalty += kl_divergence(s.rho, m * inv_n);
  }
  return 0.5 * recon * inv_n + s.beta * penalty;
}

AutoencoderParams ae_gradient(const AutoencoderParams& p, std::span<const Vector> batch,
                              const SparsityConfig& s) {
  AutoencoderParams grad = AutoencoderParams::zeros(p.visible(), p.hidden());
  ae_loss_and_gradient(p, batch, s, grad);
  return grad;
}

AutoencoderParams ae_train_epoch(AutoencoderParams p, std::span<const Vector> data,
                                 const SparsityConfig& s, const SgdConfig& o,
                                 AutoencoderParams& velocity, SeededRng& rng) {
  if (data.empty()) throw DataError("autoencoder training data is empty");
  check_same_shape(p, velocity);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span(order));

  for (const Vector& x : data) {
    if (x.size() != p.visible()) {
      throw DimensionError("autoencoder expects inputs of length " +
                           std::to_string(p.visible()) + ", got " + std::to_string(x.size()));
    }
  }
  AutoencoderParams grad = AutoencoderParams::zeros(p.visible(), p.hidden());
  for (std::size_t start = 0; start < order.size(); start += o.batch_size) {
    const std::size_t count = std::min(order.size() - start, o.batch_size);
    loss_and_gradient(
        p, count,
        [&](std::size_t i) { return std::span<const double>(data[order[start + i]]); }, s, grad);
    momentum_step(velocity.w_enc.data(), grad.w_enc.data(), o);
    momentum_step(velocity.b_enc, grad.b_enc, o);
    momentum_step(velocity.w_dec.data(), grad.w_dec.data(), o);
    momentum_step(velocity.b_dec, grad.b_dec, o);
    add_scaled(p, 1.0, velocity);
  }
  return p;
}

}  // namespace sae
