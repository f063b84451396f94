#include "sae/importance.hpp"

#include <algorithm>

#include "sae/error.hpp"

namespace sae {

std::string_view to_string(ImportanceMethod m) noexcept {
  return m == ImportanceMethod::drop_column ? "drop_column" : "permutation";
}

ImportanceMethod parse_importance_method(std::string_view text) {
  if (text == "drop_column") return ImportanceMethod::drop_column;
  if (text == "permutation") return ImportanceMethod::permutation;
  throw ConfigError("unknown importance method '" + std::string(text) +
                    "' (expected drop_column|permutation)");
}

namespace {

double fold_mean_accuracy(const std::vector<FoldModel>& folds,
                          const std::vector<std::vector<Vector>>& features) {
  std::vector<double> acc;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::size_t correct = 0;
    for (std::size_t t = 0; t < features[f].size(); ++t) {
      if (predict(folds[f].model, features[f][t]).label == folds[f].test_labels[t]) ++correct;
    }
    acc.push_back(100.0 * static_cast<double>(correct) /
                  static_cast<double>(features[f].size()));
  }
  return mean_fold_accuracy(acc);
}

// Returns base accuracy and per-attribute accuracy with that column shuffled
// inside each held-out fold.
std::pair<double, std::vector<double>> permutation_arms(std::span<const CaseRecord> cohort,
                                                        const AttributeSet& set,
                                                        const NetworkConfig& cfg,
                                                        const CvOptions& cv,
                                                        const SeededRng& rng) {
  const FoldPlan plan = plan_folds(cohort, cv, rng);
  const std::vector<FoldModel> folds = cross_validate_models(cohort, set, cfg, cv, plan, rng);
  std::vector<std::vector<Vector>> base;
  for (const FoldModel& f : folds) base.push_back(f.test_features);
  const double base_acc = fold_mean_accuracy(folds, base);

  std::vector<double> permuted(set.size());
  for (std::size_t a = 0; a < set.size(); ++a) {
    SeededRng perm_rng = rng.derive("permute", a);
    std::vector<std::vector<Vector>> shuffled = base;
    for (auto& rows : shuffled) {
      std::vector<double> column;
      for (const Vector& r : rows) column.push_back(r[a]);
      perm_rng.shuffle(std::span(column));
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i][a] = column[i];
    }
    permuted[a] = fold_mean_accuracy(folds, shuffled);
  }
  return {base_acc, permuted};
}

}  // namespace

RankingReport rank_attributes(std::span<const CaseRecord> cohort, const AttributeSet& base_set,
                              const NetworkConfig& cfg, const RankOptions& options,
                              const SeededRng& rng) {
  base_set.validate();
  if (base_set.size() < 2) throw ConfigError("ranking needs at least two attributes");
  if (options.repeats == 0) throw ConfigError("ranking needs at least one repeat");

  const std::size_t m = base_set.size();
  std::vector<double> delta(m, 0.0);
  double baseline = 0.0;
  for (std::size_t r = 0; r < options.repeats; ++r) {
    const SeededRng rep_rng = rng.derive("rank-repeat", r);
    if (options.method == ImportanceMethod::drop_column) {
      const double base = run_cv(cohort, base_set, cfg, options.cv, rep_rng).mean_accuracy_pct;
      baseline += base;
      for (std::size_t a = 0; a < m; ++a) {
        const AttributeSet reduced = without(base_set, base_set.attributes[a]);
        delta[a] += base - run_cv(cohort, reduced, cfg, options.cv, rep_rng).mean_accuracy_pct;
      }
    } else {
      const auto [base, permuted] = permutation_arms(cohort, base_set, cfg, options.cv, rep_rng);
      baseline += base;
      for (std::size_t a = 0; a < m; ++a) delta[a] += base - permuted[a];
    }
  }

  const double reps = static_cast<double>(options.repeats);
  RankingReport report;
  report.base_set = base_set.name;
  report.method = options.method;
  report.repeats = options.repeats;
  report.seed = rng.seed();
  report.baseline_accuracy_pct = baseline / reps;
  for (std::size_t a = 0; a < m; ++a) {
    report.ranking.push_back({base_set.attributes[a], delta[a] / reps});
  }
  std::ranges::stable_sort(report.ranking, [](const AttributeImportance& x,
                                              const AttributeImportance& y) {
    if (x.importance_pct != y.importance_pct) return x.importance_pct > y.importance_pct;
    return *attribute_index(x.attribute) < *attribute_index(y.attribute);
  });
  return report;
}

AblationReport group_ablation(std::span<const CaseRecord> cohort, const NetworkConfig& cfg,
                              const CvOptions& options, const SeededRng& rng) {
  AblationReport report;
  report.seed = rng.seed();
  for (const AttributeSet& set :
       {presets::full34(), presets::no_cyto(), presets::no_age(), presets::no_mut()}) {
    report.arms.push_back({set.name, set.size(), run_cv(cohort, set, cfg, options, rng)});
  }
  return report;
}

}  // namespace sae
