#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "sae/cohort.hpp"
#include "sae/error.hpp"
#include "sae/synthetic.hpp"

namespace sae {
namespace {

// Best accuracy of any single threshold rule on one column, either direction.
double best_threshold_accuracy(const std::vector<double>& column,
                               const std::vector<Prognosis>& labels) {
  std::set<double> cuts(column.begin(), column.end());
  double best = 0.0;
  for (double cut : cuts) {
    std::size_t above_good = 0;
    for (std::size_t i = 0; i < column.size(); ++i)
      above_good += (column[i] >= cut) == (labels[i] == Prognosis::good);
    const double acc = static_cast<double>(above_good) / static_cast<double>(column.size());
    best = std::max({best, acc, 1.0 - acc});
  }
  return best;
}

TEST(Synthetic, SameSeedSameCohort) {
  const std::vector<PlantedEffect> planted{{"TP53", 1.0}, {"age", 0.5}};
  SeededRng a(77), b(77), c(78);
  const auto first = generate_synthetic_cohort(50, planted, 0.3, a);
  EXPECT_EQ(first, generate_synthetic_cohort(50, planted, 0.3, b));
  EXPECT_NE(first, generate_synthetic_cohort(50, planted, 0.3, c));
}

TEST(Synthetic, RecordsSatisfyInvariants) {
  SeededRng rng(5);
  const auto cohort = generate_synthetic_cohort(300, {}, 1.0, rng);
  std::set<std::string> ids;
  for (const auto& r : cohort) {
    EXPECT_TRUE(ids.insert(r.case_id).second);
    EXPECT_GE(r.age_years, 20.0);
    EXPECT_LE(r.age_years, 88.0);
    EXPECT_TRUE(std::ranges::any_of(r.mut, [](bool f) { return f; }));
    ASSERT_TRUE(r.dtd_days.has_value());
    EXPECT_GE(*r.dtd_days, 0);
  }
  EXPECT_EQ(cohort.front().case_id, "SYN-0001");
}

TEST(Synthetic, StrongSingleAttributePredictsLabel) {
  for (const std::string attr : {"TP53", "age", "complex", "NPM1"}) {
    SeededRng rng(31);
    const std::vector<PlantedEffect> planted{{attr, 3.0}};
    const auto cohort = generate_synthetic_cohort(200, planted, 0.0, rng);
    const auto column = select_attributes(cohort, AttributeSet{"one", {attr}});
    std::vector<double> values;
    for (const auto& row : column) values.push_back(row[0]);
    EXPECT_GE(best_threshold_accuracy(values, cohort_labels(cohort)), 0.95) << attr;
  }
}

TEST(Synthetic, PureNoiseCarriesNoSignal) {
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SeededRng rng(seed);
    const auto cohort = generate_synthetic_cohort(200, {}, 1.0, rng);
    const auto raw = select_attributes(cohort, presets::full34());
    const auto labels = cohort_labels(cohort);
    const double good = static_cast<double>(std::ranges::count(labels, Prognosis::good));
    const double majority = std::max(good, 200.0 - good) / 200.0;

    // Ten-fold CV of a logistic-regression oracle on age-scaled features.
    std::size_t correct = 0;
    for (std::size_t fold = 0; fold < 10; ++fold) {
      std::vector<std::vector<double>> train, test;
      std::vector<int> train_y, test_y;
      for (std::size_t i = 0; i < raw.size(); ++i) {
        std::vector<double> x = raw[i];
        x[0] = (x[0] - 20.0) / 68.0;
        const int y = labels[i] == Prognosis::good;
        if (i % 10 == fold) {
          test.push_back(x);
          test_y.push_back(y);
        } else {
          train.push_back(x);
          train_y.push_back(y);
        }
      }
      const auto p = oracle::logistic_regression(train, train_y, test);
      for (std::size_t i = 0; i < p.size(); ++i) correct += (p[i] >= 0.5) == (test_y[i] == 1);
    }
    const double acc = static_cast<double>(correct) / 200.0;
    within += std::abs(acc - majority) <= 0.10;
  }
  EXPECT_EQ(within, 10);
}

TEST(Synthetic, ThresholdShiftsDays) {
  SeededRng rng(2);
  const auto cohort = generate_synthetic_cohort(100, {{"TP53", 2.0}}, 0.2, rng, 365);
  for (const auto& r : cohort) {
    EXPECT_LT(*r.dtd_days, 365 + 1500);
  }
  const auto labels = cohort_labels(cohort, 365);
  EXPECT_GT(std::ranges::count(labels, Prognosis::good), 0);
  EXPECT_GT(std::ranges::count(labels, Prognosis::poor), 0);
}

TEST(Synthetic, Errors) {
  SeededRng rng(1);
  EXPECT_THROW(generate_synthetic_cohort(0, {}, 0.5, rng), ConfigError);
  EXPECT_THROW(generate_synthetic_cohort(5, {}, 1.5, rng), ConfigError);
  const std::vector<PlantedEffect> bogus{{"nope", 1.0}};
  EXPECT_THROW(generate_synthetic_cohort(5, bogus, 0.5, rng), ConfigError);
}

TEST(ParsePlanted, Forms) {
  const auto p = parse_planted("age:1.5, FLT3-ITD:-2");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].attribute, "age");
  EXPECT_EQ(p[0].weight, 1.5);
  EXPECT_EQ(p[1].attribute, "FLT3");
  EXPECT_EQ(p[1].weight, -2.0);
  EXPECT_TRUE(parse_planted("none").empty());
  EXPECT_THROW(parse_planted("age"), ConfigError);
  EXPECT_THROW(parse_planted("age:x"), ConfigError);
  EXPECT_THROW(parse_planted("bogus:1"), ConfigError);
}

}  // namespace
}  // namespace sae
