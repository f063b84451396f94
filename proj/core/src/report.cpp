#include "sae/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sae/json_io.hpp"

namespace sae {

using nlohmann::json;

std::string format_percent(double pct) {
  const double truncated = std::trunc(pct + (pct >= 0.0 ? 1e-9 : -1e-9));
  return std::to_string(static_cast<long long>(truncated)) + "%";
}

FoldSummary summarize_fold_accuracies(std::span<const double> fold_accuracy_pct) {
  const double mean = mean_fold_accuracy(fold_accuracy_pct);
  return {mean, format_percent(mean)};
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string optional_percent(const std::optional<double>& v) {
  return v ? format_percent(*v) : "n/a";
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json report_json(const EvalReport& r, bool with_predictions) {
  json folds = json::array();
  for (const FoldResult& f : r.per_fold) {
    folds.push_back({{"fold_index", f.fold_index},
                     {"n_cases", f.n_cases},
                     {"correct", f.correct},
                     {"accuracy_pct", f.accuracy_pct},
                     {"confusion", to_json(f.confusion)}});
  }
  json j = {{"attribute_set", r.attribute_set},
            {"attributes", r.attributes},
            {"per_fold", std::move(folds)},
            {"mean_accuracy_pct", r.mean_accuracy_pct},
            {"pooled_accuracy_pct", r.pooled_accuracy_pct},
            {"sensitivity_pct", optional_json(r.sensitivity_pct)},
            {"specificity_pct", optional_json(r.specificity_pct)},
            {"pooled_confusion", to_json(r.pooled)},
            {"config", to_json(r.config)},
            {"seed", r.seed},
            {"k", r.k},
            {"stratified", r.stratified},
            {"threshold_days", r.threshold_days},
            {"fold_plan_hash", r.fold_plan_hash},
            {"notes", r.notes}};
  if (with_predictions) {
    json preds = json::array();
    for (const CasePrediction& p : r.predictions) {
      preds.push_back({{"case_id", p.case_id},
                       {"fold", p.fold},
                       {"score", p.score},
                       {"predicted", std::string(to_string(p.predicted))},
                       {"actual", std::string(to_string(p.actual))}});
    }
    j["predictions"] = std::move(preds);
  }
  return j;
}

}  // namespace

std::string render_table(const EvalReport& r) {
  std::ostringstream out;
  out << "Accuracy in predicting prognostic status: " << r.attribute_set << " ("
      << r.attributes.size() << " attributes)\n\n";
  out << "  Validation Set No.  Cases  Accuracy\n";
  for (const FoldResult& f : r.per_fold) {
    char line[96];
    std::snprintf(line, sizeof line, "  %18zu  %5zu  %8s\n", f.fold_index + 1, f.n_cases,
                  format_percent(f.accuracy_pct).c_str());
    out << line;
  }
  out << "  Mean= " << format_percent(r.mean_accuracy_pct) << "*  ("
      << fixed(r.mean_accuracy_pct, 2) << ")\n\n";
  out << "* corresponding to sensitivity of " << optional_percent(r.sensitivity_pct)
      << ", and specificity of " << optional_percent(r.specificity_pct) << '\n';
  out << "Pooled accuracy " << fixed(r.pooled_accuracy_pct, 2) << "% ("
      << r.pooled.tp + r.pooled.tn << "/" << r.pooled.total() << "); TP=" << r.pooled.tp
      << " FP=" << r.pooled.fp << " TN=" << r.pooled.tn << " FN=" << r.pooled.fn
      << " (positive = good)\n";
  out << "k=" << r.k << (r.stratified ? " stratified" : " unstratified")
      << ", threshold=" << r.threshold_days << " days, seed=" << r.seed << '\n';
  for (const auto& note : r.notes) out << "note: " << note << '\n';
  return out.str();
}

std::string render_structured(const EvalReport& r) {
  json doc = report_json(r, true);
  doc["format"] = "sae-eval-report";
  doc["format_version"] = kReportFormatVersion;
  return doc.dump(2) + "\n";
}

std::string render_table(const RankingReport& r) {
  std::ostringstream out;
  out << "Attribute ranking on " << r.base_set << " (" << to_string(r.method) << ", "
      << r.repeats << " repeat" << (r.repeats == 1 ? "" : "s") << ", seed=" << r.seed << ")\n";
  out << "Baseline mean accuracy " << fixed(r.baseline_accuracy_pct, 2) << "%\n\n";
  out << "  Rank  Attribute   Importance (points)\n";
  for (std::size_t i = 0; i < r.ranking.size(); ++i) {
    char line[96];
    std::snprintf(line, sizeof line, "  %4zu  %-10s  %+10.2f\n", i + 1,
                  r.ranking[i].attribute.c_str(), r.ranking[i].importance_pct);
    out << line;
  }
  return out.str();
}

std::string render_structured(const RankingReport& r) {
  json ranking = json::array();
  for (const auto& a : r.ranking) {
    ranking.push_back({{"attribute", a.attribute}, {"importance_pct", a.importance_pct}});
  }
  json doc = {{"format", "sae-ranking-report"},
              {"format_version", kReportFormatVersion},
              {"base_set", r.base_set},
              {"method", std::string(to_string(r.method))},
              {"repeats", r.repeats},
              {"seed", r.seed},
              {"baseline_accuracy_pct", r.baseline_accuracy_pct},
              {"ranking", std::move(ranking)}};
  return doc.dump(2) + "\n";
}

std::string render_table(const AblationReport& r) {
  std::ostringstream out;
  out << "Group ablation (seed=" << r.seed << ")\n\n";
  out << "  Arm       Attributes  Mean accuracy  Sensitivity  Specificity  Fold plan\n";
  for (const AblationArm& arm : r.arms) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-8s  %10zu  %13s  %11s  %11s  %016llx\n",
                  arm.name.c_str(), arm.n_attributes,
                  (fixed(arm.report.mean_accuracy_pct, 2) + "%").c_str(),
                  optional_percent(arm.report.sensitivity_pct).c_str(),
                  optional_percent(arm.report.specificity_pct).c_str(),
                  static_cast<unsigned long long>(arm.report.fold_plan_hash));
    out << line;
  }
  return out.str();
}

std::string render_structured(const AblationReport& r) {
  json arms = json::array();
  for (const AblationArm& arm : r.arms) {
    arms.push_back({{"name", arm.name},
                    {"n_attributes", arm.n_attributes},
                    {"report", report_json(arm.report, false)}});
  }
  json doc = {{"format", "sae-ablation-report"},
              {"format_version", kReportFormatVersion},
              {"seed", r.seed},
              {"arms", std::move(arms)}};
  return doc.dump(2) + "\n";
}

}  // namespace sae
