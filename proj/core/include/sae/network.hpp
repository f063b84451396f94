#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sae/autoencoder.hpp"
#include "sae/linalg.hpp"
#include "sae/normalize.hpp"
#include "sae/prognosis.hpp"
#include "sae/rng.hpp"

namespace sae {

enum class HeadType { sigmoid, linear };

std::string_view to_string(HeadType head) noexcept;
HeadType parse_head_type(std::string_view text);  // throws ConfigError

struct NetworkConfig {
  std::size_t input_dim = 34;
  std::vector<std::size_t> hidden_sizes{20, 15, 10};
  HeadType head = HeadType::sigmoid;
  SparsityConfig sparsity{};
  SgdConfig pretrain{0.5, 0.9, 10, 100};
  SgdConfig finetune{0.5, 0.9, 10, 200};
  double decision_threshold = 0.5;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

// Attribute schema and label rule the model was trained under. Carried with
// the model so prediction can refuse mismatched inputs.
struct ModelMetadata {
  std::string attribute_set;
  std::vector<std::string> attributes;
  long threshold_days = 730;

  friend bool operator==(const ModelMetadata&, const ModelMetadata&) = default;
};

struct StackedModel {
  std::vector<AutoencoderParams> layers;  // decoders are kept but unused after pretraining
  Vector head_w;
  double head_b = 0.0;
  NetworkConfig config;
  NormStats norm_stats;
  ModelMetadata metadata;

  // Layer chaining, head width and config consistency. Throws DimensionError.
  void validate() const;

  friend bool operator==(const StackedModel&, const StackedModel&) = default;
};

struct ForwardResult {
  std::vector<Vector> hidden;  // one per layer
  double score = 0.0;
};

struct Prediction {
  double score = 0.0;
  Prognosis label = Prognosis::poor;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

// Already-normalized input with its training target (1 = good, 0 = poor).
struct Sample {
  Vector features;
  double target = 0.0;
};

// Encoder-side gradient (or velocity) of a stacked model.
struct StackGradient {
  std::vector<Matrix> w;
  std::vector<Vector> b;
  Vector head_w;
  double head_b = 0.0;

  static StackGradient zeros_like(const StackedModel& m);
};

// Greedy layer-wise pretraining. Layer k is trained for cfg.pretrain.epochs on
// the representation produced by layers 0..k-1.
std::vector<AutoencoderParams> pretrain(const NetworkConfig& cfg, std::span<const Vector> data,
                                        SeededRng& rng);

// Wraps pretrained layers with a freshly initialized head.
StackedModel assemble_model(const NetworkConfig& cfg, std::vector<AutoencoderParams> layers,
                            SeededRng& rng);

ForwardResult forward(const StackedModel& m, std::span<const double> x);

// Mean of 1/2 (score - target)^2 over the batch plus beta * KL sparsity on the
// batch-mean activations of every hidden layer.
double finetune_loss(const StackedModel& m, std::span<const Sample> batch);
StackGradient finetune_gradient(const StackedModel& m, std::span<const Sample> batch);

// Supervised SGD with momentum through head and encoders. Returns the
// full-data loss after each epoch.
std::vector<double> finetune(StackedModel& m, std::span<const Sample> data, SeededRng& rng);

Prognosis classify(double score, double threshold) noexcept;  // ties go to good
Prediction predict(const StackedModel& m, std::span<const double> x);

// pretrain + assemble_model + finetune, with independent child streams.
StackedModel train_model(const NetworkConfig& cfg, std::span<const Sample> data, SeededRng& rng);

}  // namespace sae
