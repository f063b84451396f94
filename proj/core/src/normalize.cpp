#include "sae/normalize.hpp"

#include <algorithm>
#include <string>

#include "sae/error.hpp"

namespace sae {

NormStats fit_normalizer(std::span<const Vector> train_rows) {
  if (train_rows.empty()) throw DataError("cannot fit normalizer on an empty training set");
  const std::size_t width = train_rows.front().size();
  NormStats stats{train_rows.front(), train_rows.front()};
  for (const Vector& row : train_rows) {
    if (row.size() != width) {
      throw DimensionError("normalizer rows disagree in width: " + std::to_string(width) +
                           " vs " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      stats.min[c] = std::min(stats.min[c], row[c]);
      stats.max[c] = std::max(stats.max[c], row[c]);
    }
  }
  return stats;
}

Vector apply_normalizer(const NormStats& stats, std::span<const double> row) {
  if (row.size() != stats.size()) {
    throw DimensionError("normalizer fitted on " + std::to_string(stats.size()) +
                         " attributes, row has " + std::to_string(row.size()));
  }
  Vector out(row.size());
  for (std::size_t c = 0; c < row.size(); ++c) {
    const double lo = stats.min[c];
    const double hi = stats.max[c];
    out[c] = hi > lo ? std::clamp((row[c] - lo) / (hi - lo), 0.0, 1.0) : 0.5;
  }
  return out;
}

std::vector<Vector> apply_normalizer(const NormStats& stats, std::span<const Vector> rows) {
  std::vector<Vector> out;
  out.reserve(rows.size());
  for (const Vector& row : rows) out.push_back(apply_normalizer(stats, row));
  return out;
}

}  // namespace sae
