#include <gtest/gtest.h>

#include <algorithm>

#include "sae/cohort.hpp"
#include "sae/error.hpp"
#include "sae/importance.hpp"
#include "sae/report.hpp"
#include "sae/synthetic.hpp"

namespace sae {
namespace {

const AttributeSet kBase{"small", {"age", "tri8", "complex", "FLT3", "NPM1", "TP53", "KIT"}};

NetworkConfig quick_config() {
  NetworkConfig cfg;
  cfg.hidden_sizes = {6, 4};
  cfg.sparsity.beta = 0.0;
  cfg.pretrain = {1.0, 0.9, 10, 10};
  cfg.finetune = {1.0, 0.9, 10, 40};
  return cfg;
}

RankOptions quick_options() {
  RankOptions o;
  o.repeats = 1;
  o.cv.k = 5;
  return o;
}

TEST(RankAttributes, Deterministic) {
  SeededRng gen(1);
  const auto cohort = generate_synthetic_cohort(60, {{"TP53", 2.0}}, 0.2, gen);
  const RankingReport a = rank_attributes(cohort, kBase, quick_config(), quick_options(),
                                          SeededRng(2));
  const RankingReport b = rank_attributes(cohort, kBase, quick_config(), quick_options(),
                                          SeededRng(2));
  EXPECT_EQ(render_structured(a), render_structured(b));
  ASSERT_EQ(a.ranking.size(), kBase.size());
  for (std::size_t i = 1; i < a.ranking.size(); ++i)
    EXPECT_GE(a.ranking[i - 1].importance_pct, a.ranking[i].importance_pct);
}

TEST(RankAttributes, DominantAttributeRanksFirst) {
  int first = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SeededRng gen(seed);
    const auto cohort = generate_synthetic_cohort(100, {{"NPM1", -3.0}}, 0.1, gen);
    const RankingReport r =
        rank_attributes(cohort, kBase, quick_config(), quick_options(), SeededRng(seed));
    first += r.ranking.front().attribute == "NPM1";
  }
  EXPECT_GE(first, 9);
}

TEST(RankAttributes, PureNoiseImportancesCenterOnZero) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SeededRng gen(seed + 50);
    const auto cohort = generate_synthetic_cohort(100, {}, 1.0, gen);
    const RankingReport r =
        rank_attributes(cohort, kBase, quick_config(), quick_options(), SeededRng(seed));
    for (const auto& a : r.ranking) {
      sum += a.importance_pct;
      ++count;
    }
  }
  EXPECT_LT(std::abs(sum / static_cast<double>(count)), 5.0);
}

TEST(RankAttributes, PermutationMethodRuns) {
  SeededRng gen(3);
  const auto cohort = generate_synthetic_cohort(60, {{"TP53", 3.0}}, 0.1, gen);
  RankOptions o = quick_options();
  o.method = ImportanceMethod::permutation;
  const RankingReport r = rank_attributes(cohort, kBase, quick_config(), o, SeededRng(4));
  EXPECT_EQ(r.method, ImportanceMethod::permutation);
  EXPECT_EQ(r.ranking.size(), kBase.size());
}

TEST(RankAttributes, Errors) {
  SeededRng gen(3);
  const auto cohort = generate_synthetic_cohort(30, {}, 1.0, gen);
  EXPECT_THROW(rank_attributes(cohort, AttributeSet{"one", {"age"}}, quick_config(),
                               quick_options(), SeededRng(1)),
               ConfigError);
  RankOptions none = quick_options();
  none.repeats = 0;
  EXPECT_THROW(rank_attributes(cohort, kBase, quick_config(), none, SeededRng(1)), ConfigError);
  EXPECT_THROW(parse_importance_method("magic"), ConfigError);
  EXPECT_EQ(parse_importance_method("permutation"), ImportanceMethod::permutation);
}

TEST(GroupAblation, ArmsShareFoldPlans) {
  SeededRng gen(5);
  const auto cohort = generate_synthetic_cohort(50, {{"TP53", 2.0}}, 0.3, gen);
  NetworkConfig cfg = quick_config();
  cfg.pretrain.epochs = 2;
  cfg.finetune.epochs = 4;
  CvOptions cv;
  cv.k = 5;
  const AblationReport r = group_ablation(cohort, cfg, cv, SeededRng(6));
  ASSERT_EQ(r.arms.size(), 4u);
  const std::pair<const char*, std::size_t> expected[] = {
      {"FULL34", 34}, {"NO_CYTO", 24}, {"NO_AGE", 33}, {"NO_MUT", 11}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r.arms[i].name, expected[i].first);
    EXPECT_EQ(r.arms[i].n_attributes, expected[i].second);
    EXPECT_EQ(r.arms[i].report.attributes.size(), expected[i].second);
    EXPECT_EQ(r.arms[i].report.fold_plan_hash, r.arms[0].report.fold_plan_hash);
  }
}

}  // namespace
}  // namespace sae
