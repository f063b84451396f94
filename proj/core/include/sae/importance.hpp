#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sae/cohort.hpp"
#include "sae/cross_validation.hpp"

namespace sae {

enum class ImportanceMethod {
  drop_column,  // retrain without the attribute
  permutation,  // shuffle the attribute within each held-out fold
};

std::string_view to_string(ImportanceMethod m) noexcept;
ImportanceMethod parse_importance_method(std::string_view text);  // throws ConfigError

struct RankOptions {
  std::size_t repeats = 5;
  ImportanceMethod method = ImportanceMethod::drop_column;
  CvOptions cv{};
};

struct AttributeImportance {
  std::string attribute;
  double importance_pct = 0.0;  // accuracy points lost without the attribute
};

struct RankingReport {
  std::string base_set;
  ImportanceMethod method = ImportanceMethod::drop_column;
  std::size_t repeats = 0;
  std::uint64_t seed = 0;
  double baseline_accuracy_pct = 0.0;  // mean over repeats
  std::vector<AttributeImportance> ranking;  // descending importance
};

// importance(a) = mean CV accuracy on base_set - mean CV accuracy with `a`
// removed (or permuted), averaged over repeats drawn from
// rng.derive("rank-repeat", r). Within a repeat every arm shares fold plans and
// training streams. Ties keep canonical attribute order.
RankingReport rank_attributes(std::span<const CaseRecord> cohort, const AttributeSet& base_set,
                              const NetworkConfig& cfg, const RankOptions& options,
                              const SeededRng& rng);

struct AblationArm {
  std::string name;
  std::size_t n_attributes = 0;
  EvalReport report;
};

struct AblationReport {
  std::uint64_t seed = 0;
  std::vector<AblationArm> arms;  // FULL34, NO_CYTO, NO_AGE, NO_MUT
};

// Four run_cv executions that share one rng, hence identical fold plans.
AblationReport group_ablation(std::span<const CaseRecord> cohort, const NetworkConfig& cfg,
                              const CvOptions& options, const SeededRng& rng);

}  // namespace sae
