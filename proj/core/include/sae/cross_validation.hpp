#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sae/cohort.hpp"
#include "sae/folds.hpp"
#include "sae/metrics.hpp"
#include "sae/network.hpp"
#include "sae/rng.hpp"

namespace sae {

// Passed to CvOptions::on_fold after each fold's normalizer is fitted.
struct FoldTrace {
  std::size_t fold = 0;
  std::span<const std::size_t> train_indices;
  std::span<const std::size_t> test_indices;
  const NormStats* norm_stats = nullptr;
};

struct CvOptions {
  std::size_t k = 10;
  bool stratified = true;
  long threshold_days = kDefaultThresholdDays;
  std::size_t threads = 1;  // folds trained concurrently; 0 = hardware concurrency
  std::function<void(const FoldTrace&)> on_fold;  // called under a lock
};

struct FoldResult {
  std::size_t fold_index = 0;
  std::size_t n_cases = 0;
  std::size_t correct = 0;
  double accuracy_pct = 0.0;
  ConfusionMatrix confusion;
};

struct CasePrediction {
  std::string case_id;
  std::size_t fold = 0;
  double score = 0.0;
  Prognosis predicted = Prognosis::poor;
  Prognosis actual = Prognosis::poor;
};

struct EvalReport {
  std::string attribute_set;
  std::vector<std::string> attributes;
  std::vector<FoldResult> per_fold;
  double mean_accuracy_pct = 0.0;    // unweighted mean of per-fold accuracies
  double pooled_accuracy_pct = 0.0;  // correct / total across all folds
  std::optional<double> sensitivity_pct;  // pooled matrix
  std::optional<double> specificity_pct;
  ConfusionMatrix pooled;
  NetworkConfig config;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  bool stratified = false;
  long threshold_days = kDefaultThresholdDays;
  std::uint64_t fold_plan_hash = 0;
  std::vector<CasePrediction> predictions;  // cohort order
  std::vector<std::string> notes;
};

// Unweighted mean of per-fold accuracies. Throws DataError when empty.
double mean_fold_accuracy(std::span<const double> fold_accuracy_pct);

// Fills mean, pooled accuracy, pooled confusion and sensitivity/specificity
// from per_fold.
void finalize_report(EvalReport& report);

// A model trained on one fold's training split, with its normalized test split.
struct FoldModel {
  std::size_t fold = 0;
  StackedModel model;
  std::vector<std::size_t> test_indices;
  std::vector<Vector> test_features;
  std::vector<Prognosis> test_labels;
};

// Fold plan for a cohort, drawn from rng.derive("folds"). Arms of an experiment
// that share an rng therefore share plans.
FoldPlan plan_folds(std::span<const CaseRecord> cohort, const CvOptions& options,
                    const SeededRng& rng);

// Per fold: fit the normalizer on the training split only, pretrain and
// fine-tune on it with rng.derive("fold-model", fold), keep the model.
std::vector<FoldModel> cross_validate_models(std::span<const CaseRecord> cohort,
                                             const AttributeSet& set, const NetworkConfig& cfg,
                                             const CvOptions& options, const FoldPlan& plan,
                                             const SeededRng& rng);

// Full k-fold evaluation. cfg.input_dim is overridden by the set size.
EvalReport run_cv(std::span<const CaseRecord> cohort, const AttributeSet& set,
                  const NetworkConfig& cfg, const CvOptions& options, const SeededRng& rng);

}  // namespace sae
