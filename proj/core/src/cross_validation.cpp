#include "sae/cross_validation.hpp"

#include <mutex>
#include <numeric>

#include "sae/error.hpp"
#include "sae/parallel.hpp"

namespace sae {

double mean_fold_accuracy(std::span<const double> fold_accuracy_pct) {
  if (fold_accuracy_pct.empty()) throw DataError("no fold accuracies to average");
  const double sum = std::accumulate(fold_accuracy_pct.begin(), fold_accuracy_pct.end(), 0.0);
  return sum / static_cast<double>(fold_accuracy_pct.size());
}

void finalize_report(EvalReport& report) {
  std::vector<double> accuracies;
  report.pooled = {};
  for (const FoldResult& f : report.per_fold) {
    accuracies.push_back(f.accuracy_pct);
    report.pooled += f.confusion;
  }
  report.mean_accuracy_pct = mean_fold_accuracy(accuracies);
  const Metrics m = compute_metrics(report.pooled);
  report.pooled_accuracy_pct = 100.0 * m.accuracy;
  report.sensitivity_pct.reset();
  report.specificity_pct.reset();
  if (m.sensitivity) report.sensitivity_pct = 100.0 * *m.sensitivity;
  if (m.specificity) report.specificity_pct = 100.0 * *m.specificity;
}

FoldPlan plan_folds(std::span<const CaseRecord> cohort, const CvOptions& options,
                    const SeededRng& rng) {
  const std::vector<Prognosis> labels = cohort_labels(cohort, options.threshold_days);
  SeededRng fold_rng = rng.derive("folds");
  return make_folds(cohort.size(), options.k, labels, fold_rng, options.stratified);
}

std::vector<FoldModel> cross_validate_models(std::span<const CaseRecord> cohort,
                                             const AttributeSet& set, const NetworkConfig& cfg,
                                             const CvOptions& options, const FoldPlan& plan,
                                             const SeededRng& rng) {
  set.validate();
  if (plan.size() != cohort.size()) {
    throw DataError("fold plan covers " + std::to_string(plan.size()) + " cases, cohort has " +
                    std::to_string(cohort.size()));
  }
  plan.validate();
  NetworkConfig fold_cfg = cfg;
  fold_cfg.input_dim = set.size();
  fold_cfg.validate();

  const std::vector<Vector> raw = select_attributes(cohort, set);
  const std::vector<Prognosis> labels = cohort_labels(cohort, options.threshold_days);

  std::vector<FoldModel> folds(plan.k);
  std::mutex trace_mutex;
  parallel_for(plan.k, options.threads, [&](std::size_t fold) {
    const std::vector<std::size_t> train = plan.complement(fold);
    const std::vector<std::size_t> test = plan.members(fold);

    std::vector<Vector> train_raw;
    train_raw.reserve(train.size());
    for (std::size_t i : train) train_raw.push_back(raw[i]);
    const NormStats stats = fit_normalizer(train_raw);
    if (options.on_fold) {
      std::lock_guard lock(trace_mutex);
      options.on_fold(FoldTrace{fold, train, test, &stats});
    }

    std::vector<Sample> samples;
    samples.reserve(train.size());
    for (std::size_t t = 0; t < train.size(); ++t) {
      samples.push_back({apply_normalizer(stats, train_raw[t]), target_of(labels[train[t]])});
    }
    SeededRng model_rng = rng.derive("fold-model", fold);
    FoldModel& out = folds[fold];
    out.fold = fold;
    out.model = train_model(fold_cfg, samples, model_rng);
    out.model.norm_stats = stats;
    out.model.metadata = {set.name, set.attributes, options.threshold_days};
    out.test_indices = test;
    for (std::size_t i : test) {
      out.test_features.push_back(apply_normalizer(stats, raw[i]));
      out.test_labels.push_back(labels[i]);
    }
  });
  return folds;
}

EvalReport run_cv(std::span<const CaseRecord> cohort, const AttributeSet& set,
                  const NetworkConfig& cfg, const CvOptions& options, const SeededRng& rng) {
  const FoldPlan plan = plan_folds(cohort, options, rng);
  const std::vector<FoldModel> folds = cross_validate_models(cohort, set, cfg, options, plan, rng);

  EvalReport report;
  report.attribute_set = set.name;
  report.attributes = set.attributes;
  report.config = cfg;
  report.config.input_dim = set.size();
  report.seed = rng.seed();
  report.k = plan.k;
  report.stratified = plan.stratified;
  report.threshold_days = options.threshold_days;
  report.fold_plan_hash = plan.hash();
  if (!plan.note.empty()) report.notes.push_back(plan.note);
  report.predictions.resize(cohort.size());

  for (const FoldModel& f : folds) {
    FoldResult r;
    r.fold_index = f.fold;
    r.n_cases = f.test_indices.size();
    for (std::size_t t = 0; t < f.test_indices.size(); ++t) {
      const Prediction p = predict(f.model, f.test_features[t]);
      r.confusion.add(p.label, f.test_labels[t]);
      if (p.label == f.test_labels[t]) ++r.correct;
      const std::size_t idx = f.test_indices[t];
      report.predictions[idx] = {cohort[idx].case_id, f.fold, p.score, p.label,
                                 f.test_labels[t]};
    }
    r.accuracy_pct = 100.0 * static_cast<double>(r.correct) / static_cast<double>(r.n_cases);
    report.per_fold.push_back(r);
  }
  finalize_report(report);
  return report;
}

}  // namespace sae
