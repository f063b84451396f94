#include "sae/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sae/error.hpp"

namespace sae {

std::string_view to_string(HeadType head) noexcept {
  return head == HeadType::sigmoid ? "sigmoid" : "linear";
}

HeadType parse_head_type(std::string_view text) {
  if (text == "sigmoid") return HeadType::sigmoid;
  if (text == "linear") return HeadType::linear;
  throw ConfigError("unknown head type '" + std::string(text) + "' (expected sigmoid|linear)");
}

void NetworkConfig::validate() const {
  if (input_dim == 0) throw ConfigError("input dimension must be >= 1");
  if (hidden_sizes.empty()) throw ConfigError("at least one hidden layer is required");
  for (std::size_t h : hidden_sizes) {
    if (h == 0) throw ConfigError("hidden layer sizes must be >= 1");
  }
  sparsity.validate();
  pretrain.validate();
  finetune.validate();
  if (!std::isfinite(decision_threshold)) throw ConfigError("decision threshold must be finite");
  if (head == HeadType::sigmoid && !(decision_threshold > 0.0 && decision_threshold < 1.0)) {
    throw ConfigError("decision threshold must lie in (0, 1) for a sigmoid head, got " +
                      std::to_string(decision_threshold));
  }
}

void StackedModel::validate() const {
  if (layers.empty()) throw DimensionError("model has no layers");
  if (layers.size() != config.hidden_sizes.size()) {
    throw DimensionError("model has " + std::to_string(layers.size()) +
                         " layers but config lists " +
                         std::to_string(config.hidden_sizes.size()));
  }
  std::size_t visible = config.input_dim;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    layers[k].validate();
    if (layers[k].visible() != visible || layers[k].hidden() != config.hidden_sizes[k]) {
      throw DimensionError("layer " + std::to_string(k) + " is " +
                           std::to_string(layers[k].visible()) + "->" +
                           std::to_string(layers[k].hidden()) + ", expected " +
                           std::to_string(visible) + "->" +
                           std::to_string(config.hidden_sizes[k]));
    }
    visible = layers[k].hidden();
  }
  if (head_w.size() != visible) {
    throw DimensionError("head has " + std::to_string(head_w.size()) + " weights for " +
                         std::to_string(visible) + " hidden units");
  }
  if (norm_stats.size() != 0 && norm_stats.size() != config.input_dim) {
    throw DimensionError("normalizer covers " + std::to_string(norm_stats.size()) +
                         " attributes, model input is " + std::to_string(config.input_dim));
  }
}

StackGradient StackGradient::zeros_like(const StackedModel& m) {
  StackGradient g;
  for (const auto& layer : m.layers) {
    g.w.emplace_back(layer.w_enc.rows(), layer.w_enc.cols());
    g.b.emplace_back(layer.b_enc.size(), 0.0);
  }
  g.head_w.assign(m.head_w.size(), 0.0);
  return g;
}

std::vector<AutoencoderParams> pretrain(const NetworkConfig& cfg, std::span<const Vector> data,
                                        SeededRng& rng) {
  cfg.validate();
  if (data.empty()) throw DataError("pretraining data is empty");
  for (const Vector& x : data) {
    if (x.size() != cfg.input_dim) {
      throw DimensionError("pretraining expects inputs of length " +
                           std::to_string(cfg.input_dim) + ", got " + std::to_string(x.size()));
    }
  }
  std::vector<AutoencoderParams> layers;
  std::vector<Vector> representation(data.begin(), data.end());
  std::size_t visible = cfg.input_dim;
  for (std::size_t k = 0; k < cfg.hidden_sizes.size(); ++k) {
    SeededRng layer_rng = rng.derive("pretrain-layer", k);
    AutoencoderParams params = AutoencoderParams::random(visible, cfg.hidden_sizes[k], layer_rng);
    AutoencoderParams velocity = AutoencoderParams::zeros(visible, cfg.hidden_sizes[k]);
    for (std::size_t epoch = 0; epoch < cfg.pretrain.epochs; ++epoch) {
      params = ae_train_epoch(std::move(params), representation, cfg.sparsity, cfg.pretrain,
                              velocity, layer_rng);
    }
    for (Vector& x : representation) x = encode(params, x);
    visible = params.hidden();
    layers.push_back(std::move(params));
  }
  return layers;
}

StackedModel assemble_model(const NetworkConfig& cfg, std::vector<AutoencoderParams> layers,
                            SeededRng& rng) {
  StackedModel m;
  m.config = cfg;
  m.layers = std::move(layers);
  const std::size_t last = cfg.hidden_sizes.back();
  const Matrix w = init_weights(1, last, rng);
  m.head_w.assign(w.data().begin(), w.data().end());
  m.head_b = 0.0;
  m.validate();
  return m;
}

namespace {

void check_input(const StackedModel& m, std::span<const double> x) {
  if (x.size() != m.config.input_dim) {
    throw DimensionError("model expects " + std::to_string(m.config.input_dim) +
                         " inputs, got " + std::to_string(x.size()));
  }
}

double head_output(const StackedModel& m, std::span<const double> last) {
  double z = m.head_b;
  for (std::size_t j = 0; j < last.size(); ++j) z += m.head_w[j] * last[j];
  return m.config.head == HeadType::sigmoid ? sigmoid(z) : z;
}

// Forward activations for a batch; acts[l] is (n x hidden_l).
struct BatchTrace {
  std::vector<Matrix> acts;
  Vector scores;
};

template <typename Input>
BatchTrace trace_batch(const StackedModel& m, std::size_t n, Input&& input) {
  BatchTrace t;
  for (const auto& layer : m.layers) t.acts.emplace_back(n, layer.hidden());
  t.scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> in = input(i).features;
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
      auto h = t.acts[l].row(i);
      affine_into(m.layers[l].w_enc, in, m.layers[l].b_enc, h);
      sigmoid_inplace(h);
      in = h;
    }
    t.scores[i] = head_output(m, in);
  }
  return t;
}

std::vector<Vector> batch_means(const BatchTrace& t) {
  std::vector<Vector> means;
  for (const Matrix& a : t.acts) {
    Vector mean(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      auto r = a.row(i);
      for (std::size_t j = 0; j < r.size(); ++j) mean[j] += r[j];
    }
    for (double& v : mean) v /= static_cast<double>(a.rows());
    means.push_back(std::move(mean));
  }
  return means;
}

template <typename Input>
double batch_loss(const StackedModel& m, std::size_t n, Input&& input, const BatchTrace& t) {
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = t.scores[i] - input(i).target;
    err += 0.5 * d * d;
  }
  double penalty = 0.0;
  const SparsityConfig& s = m.config.sparsity;
  if (s.beta > 0.0) {
    for (const Vector& mean : batch_means(t)) {
      for (double q : mean) penalty += kl_divergence(s.rho, q);
    }
  }
  return err / static_cast<double>(n) + s.beta * penalty;
}

template <typename Input>
double loss_and_gradient(const StackedModel& m, std::size_t n, Input&& input,
                         StackGradient& g) {
  const BatchTrace t = trace_batch(m, n, input);
  const std::size_t depth = m.layers.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const SparsityConfig& s = m.config.sparsity;

  for (std::size_t l = 0; l < depth; ++l) {
    std::ranges::fill(g.w[l].data(), 0.0);
    std::ranges::fill(g.b[l], 0.0);
  }
  std::ranges::fill(g.head_w, 0.0);
  g.head_b = 0.0;

  std::vector<Vector> sparse(depth);
  const std::vector<Vector> means = batch_means(t);
  for (std::size_t l = 0; l < depth; ++l) {
    sparse[l].assign(means[l].size(), 0.0);
    if (s.beta > 0.0) {
      for (std::size_t j = 0; j < means[l].size(); ++j) {
        sparse[l][j] = s.beta * kl_derivative(s.rho, means[l][j]) * inv_n;
      }
    }
  }

  std::vector<Vector> upstream(depth);
  for (std::size_t l = 0; l < depth; ++l) upstream[l].resize(m.layers[l].hidden());
  Vector delta;
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& sample = input(i);
    const double score = t.scores[i];
    double ds = (score - sample.target) * inv_n;
    if (m.config.head == HeadType::sigmoid) ds *= score * (1.0 - score);

    auto last = t.acts[depth - 1].row(i);
    for (std::size_t j = 0; j < last.size(); ++j) {
      g.head_w[j] += ds * last[j];
      upstream[depth - 1][j] = ds * m.head_w[j] + sparse[depth - 1][j];
    }
    g.head_b += ds;

    for (std::size_t l = depth; l-- > 0;) {
      auto h = t.acts[l].row(i);
      std::span<const double> in =
          l == 0 ? std::span<const double>(sample.features) : t.acts[l - 1].row(i);
      delta.resize(h.size());
      for (std::size_t j = 0; j < h.size(); ++j) {
        delta[j] = upstream[l][j] * h[j] * (1.0 - h[j]);
      }
      for (std::size_t j = 0; j < h.size(); ++j) {
        auto gw = g.w[l].row(j);
        for (std::size_t v = 0; v < in.size(); ++v) gw[v] += delta[j] * in[v];
        g.b[l][j] += delta[j];
      }
      if (l > 0) {
        transposed_times_into(m.layers[l].w_enc, delta, upstream[l - 1]);
        for (std::size_t j = 0; j < upstream[l - 1].size(); ++j) {
          upstream[l - 1][j] += sparse[l - 1][j];
        }
      }
    }
  }
  return batch_loss(m, n, input, t);
}

void check_samples(const StackedModel& m, std::span<const Sample> data) {
  if (data.empty()) throw DataError("fine-tuning data is empty");
  for (const Sample& s : data) check_input(m, s.features);
}

void momentum_step(std::span<double> velocity, std::span<const double> grad, const SgdConfig& o) {
  for (std::size_t i = 0; i < velocity.size(); ++i) {
    velocity[i] = o.momentum * velocity[i] - o.learning_rate * grad[i];
  }
}

void add_into(std::span<double> dst, std::span<const double> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

}  // namespace

ForwardResult forward(const StackedModel& m, std::span<const double> x) {
  check_input(m, x);
  ForwardResult r;
  std::span<const double> in = x;
  for (const auto& layer : m.layers) {
    r.hidden.push_back(encode(layer, in));
    in = r.hidden.back();
  }
  r.score = head_output(m, in);
  return r;
}

double finetune_loss(const StackedModel& m, std::span<const Sample> batch) {
  check_samples(m, batch);
  const auto input = [&](std::size_t i) -> const Sample& { return batch[i]; };
  return batch_loss(m, batch.size(), input, trace_batch(m, batch.size(), input));
}

StackGradient finetune_gradient(const StackedModel& m, std::span<const Sample> batch) {
  check_samples(m, batch);
  StackGradient g = StackGradient::zeros_like(m);
  loss_and_gradient(m, batch.size(), [&](std::size_t i) -> const Sample& { return batch[i]; },
                    g);
  return g;
}

std::vector<double> finetune(StackedModel& m, std::span<const Sample> data, SeededRng& rng) {
  m.validate();
  check_samples(m, data);
  const SgdConfig& o = m.config.finetune;
  o.validate();

  StackGradient grad = StackGradient::zeros_like(m);
  StackGradient velocity = StackGradient::zeros_like(m);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> history;
  history.reserve(o.epochs);

  for (std::size_t epoch = 0; epoch < o.epochs; ++epoch) {
    rng.shuffle(std::span(order));
    for (std::size_t start = 0; start < order.size(); start += o.batch_size) {
      const std::size_t count = std::min(order.size() - start, o.batch_size);
      loss_and_gradient(
          m, count, [&](std::size_t i) -> const Sample& { return data[order[start + i]]; },
          grad);
      for (std::size_t l = 0; l < m.layers.size(); ++l) {
        momentum_step(velocity.w[l].data(), grad.w[l].data(), o);
        momentum_step(velocity.b[l], grad.b[l], o);
        add_into(m.layers[l].w_enc.data(), velocity.w[l].data());
        add_into(m.layers[l].b_enc, velocity.b[l]);
      }
      momentum_step(velocity.head_w, grad.head_w, o);
      add_into(m.head_w, velocity.head_w);
      velocity.head_b = o.momentum * velocity.head_b - o.learning_rate * grad.head_b;
      m.head_b += velocity.head_b;
    }
    history.push_back(finetune_loss(m, data));
  }
  return history;
}

Prognosis classify(double score, double threshold) noexcept {
  return score >= threshold ? Prognosis::good : Prognosis::poor;
}

Prediction predict(const StackedModel& m, std::span<const double> x) {
  const double score = forward(m, x).score;
  return {score, classify(score, m.config.decision_threshold)};
}

StackedModel train_model(const NetworkConfig& cfg, std::span<const Sample> data,
                         SeededRng& rng) {
  cfg.validate();
  if (data.empty()) throw DataError("training data is empty");
  std::vector<Vector> features;
  features.reserve(data.size());
  for (const Sample& s : data) features.push_back(s.features);

  SeededRng pretrain_rng = rng.derive("pretrain");
  SeededRng head_rng = rng.derive("head");
  SeededRng finetune_rng = rng.derive("finetune");
  StackedModel m = assemble_model(cfg, pretrain(cfg, features, pretrain_rng), head_rng);
  finetune(m, data, finetune_rng);
  return m;
}

}  // namespace sae
