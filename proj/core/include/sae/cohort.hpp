#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sae/linalg.hpp"
#include "sae/prognosis.hpp"

namespace sae {

inline constexpr std::size_t kCytoCount = 10;
inline constexpr std::size_t kMutationCount = 23;
inline constexpr std::size_t kAttributeCount = 1 + kCytoCount + kMutationCount;
inline constexpr long kDefaultThresholdDays = 730;

inline constexpr std::string_view kAgeAttribute = "age";

inline constexpr std::array<std::string_view, kCytoCount> kCytoAttributes{
    "t_8_21", "inv_16", "t_15_17", "t_9_11", "t_9_22",
    "tri8",   "del7",   "del5",    "del20",  "complex"};

// Grouped as signalling, transcription factors, epigenetic, tumor suppressors,
// spliceosome, cohesins, non-annotated. FLT3 stands for FLT3-ITD.
inline constexpr std::array<std::string_view, kMutationCount> kMutationAttributes{
    "FLT3",  "KIT",   "KRAS",   "NRAS",  "PTPN11", "NPM1", "CEBPA", "RUNX1",
    "DNMT3A", "TET2", "IDH2",   "IDH1",  "EZH2",   "HNRNPK", "TP53", "WT1",
    "PHF6",  "U2AF1", "SMC1A",  "SMC3",  "STAG2",  "RAD21", "FAM5C"};

// Canonical order: age, the cytogenetic flags, the mutation flags.
const std::vector<std::string>& canonical_attributes();
// Index into canonical_attributes(), or nullopt. Does not resolve aliases.
std::optional<std::size_t> attribute_index(std::string_view name) noexcept;
// Maps documented alternate spellings ("FLT3-ITD", "DNMT3") to canonical names;
// other names are returned unchanged.
std::string_view resolve_alias(std::string_view name) noexcept;

struct CaseRecord {
  std::string case_id;
  double age_years = 0.0;
  std::array<bool, kCytoCount> cyto{};
  std::array<bool, kMutationCount> mut{};
  std::optional<long> dtd_days;  // absent only in unlabeled prediction inputs

  // Raw value of a canonical attribute: age in years, flags as 0/1.
  double value(std::size_t attribute) const;

  friend bool operator==(const CaseRecord&, const CaseRecord&) = default;
};

struct AttributeSet {
  std::string name;
  std::vector<std::string> attributes;

  std::size_t size() const noexcept { return attributes.size(); }
  // Non-empty, canonical names only, no duplicates. Throws ConfigError.
  void validate() const;
  // Canonical indices in set order.
  std::vector<std::size_t> indices() const;

  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;
};

namespace presets {
AttributeSet full34();
AttributeSet top14();
AttributeSet no_cyto();
AttributeSet no_age();
AttributeSet no_mut();
}  // namespace presets

// Preset name (FULL34, TOP14, NO_CYTO, NO_AGE, NO_MUT) or a comma-separated
// attribute list, which becomes a set named "custom". Aliases are resolved.
AttributeSet attribute_set_from_spec(std::string_view spec);
// The set with one attribute removed, named "<name>-<attribute>".
AttributeSet without(const AttributeSet& set, std::string_view attribute);

enum class LabelColumn { required, optional };

// Parses the cohort CSV. Columns are located by header name, so order is free,
// but every canonical column must be present exactly once and no others.
// Throws ParseError naming the row and column of the first violation.
std::vector<CaseRecord> parse_cohort(std::string_view csv_text,
                                     LabelColumn labels = LabelColumn::required);

// Writes the canonical column order. Records without dtd_days are written
// without the dtd_days column only if none of them has it.
std::string write_cohort_csv(std::span<const CaseRecord> records);

// good iff dtd_days >= threshold_days.
Prognosis binarize_label(long dtd_days, long threshold_days = kDefaultThresholdDays);

// One raw row per record in set order; normalization happens separately.
std::vector<Vector> select_attributes(std::span<const CaseRecord> records,
                                      const AttributeSet& set);

// Throws DataError if any record lacks dtd_days.
std::vector<Prognosis> cohort_labels(std::span<const CaseRecord> records,
                                     long threshold_days = kDefaultThresholdDays);

struct LabeledExample {
  Vector features;
  Prognosis label = Prognosis::poor;
  std::string case_id;
};

}  // namespace sae
