#pragma once

#include <cstddef>
#include <optional>

#include "sae/prognosis.hpp"

namespace sae {

// Positive class is good prognosis.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  void add(Prognosis predicted, Prognosis actual) noexcept;
  ConfusionMatrix& operator+=(const ConfusionMatrix& o) noexcept;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Fractions in [0, 1]. A rate whose denominator is zero is nullopt.
struct Metrics {
  double accuracy = 0.0;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
};

// Throws DataError on an empty matrix.
Metrics compute_metrics(const ConfusionMatrix& cm);

}  // namespace sae
