#include <benchmark/benchmark.h>

#include "sae/autoencoder.hpp"
#include "sae/cohort.hpp"
#include "sae/cross_validation.hpp"
#include "sae/network.hpp"
#include "sae/synthetic.hpp"

namespace {

using namespace sae;

std::vector<Vector> random_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<Vector> rows(n, Vector(d));
  for (auto& r : rows) for (double& v : r) v = rng.uniform();
  return rows;
}

void BM_Forward(benchmark::State& state) {
  NetworkConfig cfg;
  cfg.pretrain.epochs = 1;
  SeededRng rng(1);
  const StackedModel m = assemble_model(cfg, pretrain(cfg, random_rows(10, 34, 2), rng), rng);
  const Vector x = random_rows(1, 34, 3).front();
  for (auto _ : state) benchmark::DoNotOptimize(forward(m, x));
}
BENCHMARK(BM_Forward);

void BM_AeGradient(benchmark::State& state) {
  SeededRng rng(1);
  const AutoencoderParams p = AutoencoderParams::random(34, 20, rng);
  const auto batch = random_rows(static_cast<std::size_t>(state.range(0)), 34, 2);
  AutoencoderParams grad = AutoencoderParams::zeros(34, 20);
  for (auto _ : state) benchmark::DoNotOptimize(ae_loss_and_gradient(p, batch, {}, grad));
}
BENCHMARK(BM_AeGradient)->Arg(1)->Arg(10)->Arg(100);

void BM_FinetuneEpoch(benchmark::State& state) {
  NetworkConfig cfg;
  cfg.pretrain.epochs = 1;
  cfg.finetune.epochs = 1;
  const auto rows = random_rows(94, 34, 4);
  std::vector<Sample> data;
  for (const auto& r : rows) data.push_back({r, r[0] > 0.5 ? 1.0 : 0.0});
  SeededRng rng(1);
  StackedModel m = assemble_model(cfg, pretrain(cfg, rows, rng), rng);
  for (auto _ : state) benchmark::DoNotOptimize(finetune(m, data, rng));
}
BENCHMARK(BM_FinetuneEpoch);

void BM_CrossValidation(benchmark::State& state) {
  SeededRng gen(5);
  const std::vector<PlantedEffect> planted{{"TP53", 2.0}, {"NPM1", -2.0}};
  const auto cohort = generate_synthetic_cohort(94, planted, 0.3, gen);
  NetworkConfig cfg;
  cfg.pretrain.epochs = 20;
  cfg.finetune.epochs = 40;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_cv(cohort, presets::full34(), cfg, {}, SeededRng(1)));
}
BENCHMARK(BM_CrossValidation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
