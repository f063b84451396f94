#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sae/prognosis.hpp"
#include "sae/rng.hpp"

namespace sae {

struct FoldPlan {
  std::size_t k = 0;
  std::vector<std::size_t> assignment;  // case index -> fold in [0, k)
  bool stratified = false;
  std::string note;  // set when stratification was requested but not possible

  std::size_t size() const noexcept { return assignment.size(); }
  std::vector<std::size_t> fold_sizes() const;
  std::vector<std::size_t> members(std::size_t fold) const;
  std::vector<std::size_t> complement(std::size_t fold) const;
  // Throws DataError unless every fold is non-empty and sizes differ by <= 1.
  void validate() const;
  // FNV-1a over k and the assignment; equal plans have equal hashes.
  std::uint64_t hash() const noexcept;
};

// Shuffled partition of n cases into k folds of near-equal size.
//
// Cases are shuffled (within each class when stratified), laid out one class
// after the other, and dealt round-robin. Dealing consecutively keeps overall
// fold sizes within one of each other; per class, each fold receives
// floor(c/k) or ceil(c/k) cases. Stratification falls back to a plain shuffle,
// with `note` explaining why, when a class has fewer than k cases.
FoldPlan make_folds(std::size_t n, std::size_t k, std::span<const Prognosis> labels,
                    SeededRng& rng, bool stratified);

}  // namespace sae
