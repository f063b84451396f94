#pragma once

#include <span>
#include <string>

#include "sae/cross_validation.hpp"
#include "sae/importance.hpp"

namespace sae {

inline constexpr int kReportFormatVersion = 1;

// Whole-percent display, truncating toward zero (81.5 -> "81%"). A tolerance of
// 1e-9 absorbs representation error so 82.99999999999 still shows as 83%.
std::string format_percent(double pct);

struct FoldSummary {
  double mean_pct = 0.0;
  std::string display;  // format_percent(mean_pct)
};

// Aggregates published or computed per-fold accuracies the way the table
// footer does: unweighted mean, truncated display.
FoldSummary summarize_fold_accuracies(std::span<const double> fold_accuracy_pct);

// Fold-by-fold table with a mean line and a sensitivity/specificity footnote.
std::string render_table(const EvalReport& report);
// Versioned JSON document, keys sorted, trailing newline.
std::string render_structured(const EvalReport& report);

std::string render_table(const RankingReport& report);
std::string render_structured(const RankingReport& report);

std::string render_table(const AblationReport& report);
std::string render_structured(const AblationReport& report);

}  // namespace sae
