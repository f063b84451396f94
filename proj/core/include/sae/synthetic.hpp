#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sae/cohort.hpp"
#include "sae/rng.hpp"

namespace sae {

struct PlantedEffect {
  std::string attribute;  // canonical name (aliases accepted)
  double weight = 0.0;    // positive raises risk, i.e. pushes towards poor
};

// Flag prevalences used by the generator, in canonical flag order.
extern const std::array<double, kCytoCount> kCytoPrevalence;
extern const std::array<double, kMutationCount> kMutationPrevalence;

// Desk-scale stand-in for a clinical cohort.
//
// Per case, in this draw order:
//   age       integer years uniform in [20, 88]
//   cyto      independent Bernoulli flags with kCytoPrevalence
//   mutations independent Bernoulli flags with kMutationPrevalence, the whole
//             block redrawn until at least one flag is set
//   risk      sum(weight * value) + noise * N(0, 1), where flags contribute
//             0/1 and age contributes (age - 20) / 68
//   dtd_days  the case is good when risk <= the expected planted risk
//             (sum(weight * nominal mean value)); good cases draw dtd uniformly
//             from [threshold, threshold + 1500), poor cases from [0, threshold)
//
// With no planted effects the label is a fair coin driven by the noise term
// alone (noise must then be > 0 to avoid an all-good cohort).
std::vector<CaseRecord> generate_synthetic_cohort(std::size_t n,
                                                  const std::vector<PlantedEffect>& planted,
                                                  double noise, SeededRng& rng,
                                                  long threshold_days = kDefaultThresholdDays);

// Parses "FLT3:1.5,NPM1:-1" into effects; "none" gives no effects. Throws ConfigError.
std::vector<PlantedEffect> parse_planted(std::string_view spec);

}  // namespace sae
