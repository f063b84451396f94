#pragma once

#include <span>
#include <vector>

#include "sae/linalg.hpp"

namespace sae {

// Per-attribute min/max collected from training rows.
struct NormStats {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t size() const noexcept { return min.size(); }
  friend bool operator==(const NormStats&, const NormStats&) = default;
};

// Throws DataError on an empty or ragged row set.
NormStats fit_normalizer(std::span<const Vector> train_rows);

// Min-max scaling into [0, 1]. Values outside the training range are clamped;
// attributes that were constant in training map to 0.5.
Vector apply_normalizer(const NormStats& stats, std::span<const double> row);
std::vector<Vector> apply_normalizer(const NormStats& stats, std::span<const Vector> rows);

}  // namespace sae
