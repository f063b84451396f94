#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sae/cohort.hpp"
#include "sae/error.hpp"
#include "sae/network.hpp"
#include "sae/normalize.hpp"
#include "sae/synthetic.hpp"

namespace sae {
namespace {

NetworkConfig small_config(std::size_t input_dim, std::vector<std::size_t> hidden) {
  NetworkConfig cfg;
  cfg.input_dim = input_dim;
  cfg.hidden_sizes = std::move(hidden);
  cfg.pretrain.epochs = 2;
  cfg.finetune.epochs = 2;
  return cfg;
}

std::vector<Vector> uniform_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<Vector> rows(n, Vector(d));
  for (auto& r : rows) for (double& v : r) v = rng.uniform();
  return rows;
}

StackedModel random_model(const NetworkConfig& cfg, std::mt19937_64& gen, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  StackedModel m;
  m.config = cfg;
  std::size_t visible = cfg.input_dim;
  for (std::size_t h : cfg.hidden_sizes) {
    AutoencoderParams p = AutoencoderParams::zeros(visible, h);
    for (double& v : p.w_enc.data()) v = u(gen);
    for (double& v : p.b_enc) v = u(gen);
    m.layers.push_back(std::move(p));
    visible = h;
  }
  m.head_w.resize(visible);
  for (double& v : m.head_w) v = u(gen);
  m.head_b = u(gen);
  return m;
}

std::vector<double*> encoder_parameters(StackedModel& m) {
  std::vector<double*> out;
  for (auto& l : m.layers) {
    for (double& v : l.w_enc.data()) out.push_back(&v);
    for (double& v : l.b_enc) out.push_back(&v);
  }
  for (double& v : m.head_w) out.push_back(&v);
  out.push_back(&m.head_b);
  return out;
}

std::vector<double> flatten(const StackGradient& g) {
  std::vector<double> out;
  for (std::size_t l = 0; l < g.w.size(); ++l) {
    out.insert(out.end(), g.w[l].data().begin(), g.w[l].data().end());
    out.insert(out.end(), g.b[l].begin(), g.b[l].end());
  }
  out.insert(out.end(), g.head_w.begin(), g.head_w.end());
  out.push_back(g.head_b);
  return out;
}

TEST(Pretrain, ChainsLayerDimensions) {
  NetworkConfig cfg = small_config(34, {20, 15, 10});
  cfg.pretrain.epochs = 1;
  SeededRng rng(3);
  const auto layers = pretrain(cfg, uniform_rows(12, 34, 4), rng);
  ASSERT_EQ(layers.size(), 3u);
  const std::pair<std::size_t, std::size_t> dims[] = {{34, 20}, {20, 15}, {15, 10}};
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(layers[k].visible(), dims[k].first);
    EXPECT_EQ(layers[k].hidden(), dims[k].second);
  }
}

TEST(Pretrain, DeterministicForSeed) {
  const NetworkConfig cfg = small_config(6, {4, 3});
  const auto data = uniform_rows(15, 6, 5);
  SeededRng a(9), b(9);
  EXPECT_EQ(pretrain(cfg, data, a), pretrain(cfg, data, b));
}

TEST(Pretrain, RejectsBadInput) {
  const NetworkConfig cfg = small_config(6, {4});
  SeededRng rng(1);
  EXPECT_THROW(pretrain(cfg, uniform_rows(5, 5, 1), rng), DimensionError);
  EXPECT_THROW(pretrain(cfg, {}, rng), DataError);
}

TEST(Forward, ZeroHeadGivesNeutralScore) {
  NetworkConfig cfg = small_config(5, {4, 3});
  SeededRng rng(2);
  StackedModel m = assemble_model(cfg, pretrain(cfg, uniform_rows(8, 5, 2), rng), rng);
  std::fill(m.head_w.begin(), m.head_w.end(), 0.0);
  m.head_b = 0.0;
  const Vector x{0.1, 0.2, 0.3, 0.4, 0.5};
  EXPECT_EQ(forward(m, x).score, 0.5);
  m.config.head = HeadType::linear;
  EXPECT_EQ(forward(m, x).score, 0.0);
}

TEST(Forward, MatchesScalarOracle) {
  std::mt19937_64 gen(44);
  for (HeadType head : {HeadType::sigmoid, HeadType::linear}) {
    NetworkConfig cfg = small_config(7, {5, 4, 2});
    cfg.head = head;
    for (int trial = 0; trial < 10; ++trial) {
      const StackedModel m = random_model(cfg, gen, 1.5);
      const Vector x = uniform_rows(1, 7, gen()).front();
      const ForwardResult r = forward(m, x);
      ASSERT_EQ(r.hidden.size(), 3u);
      EXPECT_EQ(r.hidden.back().size(), 2u);
      EXPECT_NEAR(r.score, oracle::model_score(m, x), 1e-13);
    }
  }
}

TEST(Forward, RejectsWrongLength) {
  const NetworkConfig cfg = small_config(5, {3});
  std::mt19937_64 gen(1);
  const StackedModel m = random_model(cfg, gen, 1.0);
  EXPECT_THROW(forward(m, Vector{1.0, 2.0}), DimensionError);
  EXPECT_THROW(predict(m, Vector(6, 0.0)), DimensionError);
}

TEST(FinetuneLoss, MatchesScalarOracle) {
  std::mt19937_64 gen(8);
  NetworkConfig cfg = small_config(5, {4, 3});
  cfg.sparsity = {0.1, 0.5};
  const StackedModel m = random_model(cfg, gen, 1.0);
  std::vector<Sample> batch;
  for (const auto& x : uniform_rows(6, 5, 9)) batch.push_back({x, batch.size() % 2 ? 1.0 : 0.0});
  EXPECT_NEAR(finetune_loss(m, batch), oracle::finetune_loss(m, batch), 1e-14);
}

TEST(FinetuneGradient, MatchesFiniteDifferences) {
  std::mt19937_64 gen(123);
  const double betas[] = {0.0, 0.1, 1.0};
  double worst = 0.0;
  for (int cfg_index = 0; cfg_index < 10; ++cfg_index) {
    NetworkConfig cfg = small_config(5, {4, 3});
    if (cfg_index % 4 == 3) cfg.hidden_sizes = {4, 3, 2};
    cfg.head = cfg_index % 2 ? HeadType::linear : HeadType::sigmoid;
    cfg.sparsity = {0.05 + 0.05 * (cfg_index % 3), betas[cfg_index % 3]};
    StackedModel m = random_model(cfg, gen, 1.0);
    std::vector<Sample> batch;
    for (const auto& x : uniform_rows(1 + cfg_index % 5, 5, gen()))
      batch.push_back({x, static_cast<double>(gen() % 2)});
    const auto analytic = flatten(finetune_gradient(m, batch));
    const auto params = encoder_parameters(m);
    ASSERT_EQ(analytic.size(), params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double fd = oracle::central_difference(
          *params[i], [&] { return oracle::finetune_loss(m, batch); });
      worst = std::max(worst, oracle::relative_error(analytic[i], fd));
    }
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(Finetune, ZeroLearningRateIsFlat) {
  NetworkConfig cfg = small_config(5, {4, 3});
  cfg.finetune = {0.0, 0.9, 4, 6};
  std::mt19937_64 gen(3);
  StackedModel m = random_model(cfg, gen, 1.0);
  const StackedModel before = m;
  std::vector<Sample> data;
  for (const auto& x : uniform_rows(10, 5, 4)) data.push_back({x, x[0] > 0.5 ? 1.0 : 0.0});
  SeededRng rng(5);
  const auto history = finetune(m, data, rng);
  ASSERT_EQ(history.size(), 6u);
  for (double loss : history) EXPECT_EQ(loss, history.front());
  EXPECT_EQ(m, before);
}

TEST(Finetune, RejectsEmptyData) {
  NetworkConfig cfg = small_config(5, {3});
  std::mt19937_64 gen(3);
  StackedModel m = random_model(cfg, gen, 1.0);
  SeededRng rng(1);
  EXPECT_THROW(finetune(m, {}, rng), DataError);
}

TEST(Finetune, LeavesDecodersUntouched) {
  NetworkConfig cfg = small_config(4, {3});
  SeededRng rng(12);
  const auto rows = uniform_rows(20, 4, 13);
  StackedModel m = assemble_model(cfg, pretrain(cfg, rows, rng), rng);
  const Matrix w_dec = m.layers[0].w_dec;
  std::vector<Sample> data;
  for (const auto& x : rows) data.push_back({x, x[1] > 0.5 ? 1.0 : 0.0});
  finetune(m, data, rng);
  EXPECT_EQ(m.layers[0].w_dec, w_dec);
}

TEST(Finetune, SeparableToyReachesHighTrainingAccuracy) {
  int successes = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SeededRng data_rng(1000 + seed);
    std::vector<Sample> data;
    while (data.size() < 200) {
      const double a = data_rng.uniform(), b = data_rng.uniform();
      if (std::abs(a - b) < 0.1) continue;  // keep a margin
      data.push_back({{a, b}, a > b ? 1.0 : 0.0});
    }
    NetworkConfig cfg;
    cfg.input_dim = 2;
    cfg.hidden_sizes = {4};
    cfg.sparsity.beta = 0.0;
    cfg.pretrain = {0.5, 0.5, 10, 20};
    cfg.finetune = {0.5, 0.5, 10, 200};
    SeededRng rng(seed);
    const StackedModel m = train_model(cfg, data, rng);
    std::size_t correct = 0;
    for (const auto& s : data)
      correct += (predict(m, s.features).label == Prognosis::good) == (s.target == 1.0);
    if (static_cast<double>(correct) / 200.0 >= 0.95) ++successes;
  }
  EXPECT_GE(successes, 4);
}

TEST(Classify, TieAndThresholdSemantics) {
  EXPECT_EQ(classify(0.5, 0.5), Prognosis::good);
  EXPECT_EQ(classify(0.49, 0.5), Prognosis::poor);
  EXPECT_EQ(classify(0.51, 0.5), Prognosis::good);
  EXPECT_EQ(classify(-3.0, -3.0), Prognosis::good);
}

TEST(Predict, PureFunctionOfModelAndInput) {
  std::mt19937_64 gen(6);
  const StackedModel m = random_model(small_config(5, {4, 3}), gen, 2.0);
  const Vector x{0.3, 0.1, 0.9, 0.5, 0.0};
  const Prediction first = predict(m, x);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(predict(m, x), first);
  EXPECT_GT(first.score, 0.0);
  EXPECT_LT(first.score, 1.0);
  EXPECT_EQ(first.label, classify(first.score, 0.5));
}

TEST(Predict, HeldOutPlantedCaseOverSeeds) {
  const std::vector<PlantedEffect> planted{{"TP53", 2.0}, {"NPM1", -2.0}, {"complex", 2.0}};
  const AttributeSet set = presets::full34();
  CaseRecord good_case;
  good_case.case_id = "HELD-GOOD";
  good_case.age_years = 30;
  good_case.mut[*attribute_index("NPM1") - 1 - kCytoCount] = true;
  CaseRecord poor_case;
  poor_case.case_id = "HELD-POOR";
  poor_case.age_years = 75;
  poor_case.cyto[9] = true;
  poor_case.mut[*attribute_index("TP53") - 1 - kCytoCount] = true;
  const std::vector<CaseRecord> held{good_case, poor_case};
  const auto held_raw = select_attributes(held, set);

  int correct = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SeededRng rng(seed);
    SeededRng gen = rng.derive("synth");
    const auto cohort = generate_synthetic_cohort(120, planted, 0.1, gen);
    const auto raw = select_attributes(cohort, set);
    const NormStats stats = fit_normalizer(raw);
    const auto labels = cohort_labels(cohort);
    std::vector<Sample> data;
    for (std::size_t i = 0; i < raw.size(); ++i)
      data.push_back({apply_normalizer(stats, raw[i]), target_of(labels[i])});
    NetworkConfig cfg;
    cfg.sparsity.beta = 0.0;
    cfg.pretrain = {1.0, 0.9, 10, 30};
    cfg.finetune = {1.0, 0.9, 10, 100};
    SeededRng train_rng = rng.derive("train");
    const StackedModel m = train_model(cfg, data, train_rng);
    const bool ok = predict(m, apply_normalizer(stats, held_raw[0])).label == Prognosis::good &&
                    predict(m, apply_normalizer(stats, held_raw[1])).label == Prognosis::poor;
    correct += ok;
  }
  EXPECT_GE(correct, 18);
}

TEST(StackedModel, ChainingInvariantFuzz) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 40; ++trial) {
    NetworkConfig cfg;
    cfg.input_dim = 1 + gen() % 12;
    cfg.hidden_sizes.assign(1 + gen() % 4, 0);
    for (auto& h : cfg.hidden_sizes) h = 1 + gen() % 8;
    cfg.pretrain.epochs = 1;
    SeededRng rng(gen());
    const StackedModel m =
        assemble_model(cfg, pretrain(cfg, uniform_rows(4, cfg.input_dim, gen()), rng), rng);
    EXPECT_NO_THROW(m.validate());
    EXPECT_EQ(m.layers.front().visible(), cfg.input_dim);
    for (std::size_t k = 1; k < m.layers.size(); ++k)
      EXPECT_EQ(m.layers[k].visible(), m.layers[k - 1].hidden());
    EXPECT_EQ(m.head_w.size(), cfg.hidden_sizes.back());
  }
}

TEST(StackedModel, ValidateRejectsBrokenChain) {
  std::mt19937_64 gen(1);
  StackedModel m = random_model(small_config(5, {4, 3}), gen, 1.0);
  m.layers[1] = AutoencoderParams::zeros(5, 3);
  EXPECT_THROW(m.validate(), DimensionError);
  m = random_model(small_config(5, {4, 3}), gen, 1.0);
  m.head_w.push_back(0.0);
  EXPECT_THROW(m.validate(), DimensionError);
}

TEST(NetworkConfig, Validation) {
  NetworkConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.hidden_sizes.clear();
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.hidden_sizes = {3, 0};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.decision_threshold = 1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.head = HeadType::linear;
  EXPECT_NO_THROW(cfg.validate());
  cfg = {};
  cfg.input_dim = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

}  // namespace
}  // namespace sae
