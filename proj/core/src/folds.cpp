#include "sae/folds.hpp"

#include <algorithm>
#include <numeric>

#include "sae/error.hpp"

namespace sae {

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t f : assignment) ++sizes.at(f);
  return sizes;
}

std::vector<std::size_t> FoldPlan::members(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::complement(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != fold) out.push_back(i);
  }
  return out;
}

void FoldPlan::validate() const {
  if (k < 2) throw DataError("fold plan needs k >= 2");
  for (std::size_t f : assignment) {
    if (f >= k) throw DataError("fold index " + std::to_string(f) + " out of range");
  }
  const auto sizes = fold_sizes();
  const auto [lo, hi] = std::ranges::minmax(sizes);
  if (lo == 0) throw DataError("fold plan has an empty fold");
  if (hi - lo > 1) throw DataError("fold sizes differ by more than one");
}

std::uint64_t FoldPlan::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(k);
  for (std::size_t f : assignment) mix(f);
  return h;
}

FoldPlan make_folds(std::size_t n, std::size_t k, std::span<const Prognosis> labels,
                    SeededRng& rng, bool stratified) {
  if (k < 2) throw DataError("cross-validation needs k >= 2, got " + std::to_string(k));
  if (n < k) {
    throw DataError("cannot split " + std::to_string(n) + " cases into " + std::to_string(k) +
                    " folds");
  }
  if (stratified && labels.size() != n) {
    throw DataError("stratified folds need one label per case");
  }

  FoldPlan plan;
  plan.k = k;
  plan.assignment.assign(n, 0);

  std::vector<std::size_t> order;
  order.reserve(n);
  if (stratified) {
    std::vector<std::size_t> good, poor;
    for (std::size_t i = 0; i < n; ++i) {
      (labels[i] == Prognosis::good ? good : poor).push_back(i);
    }
    if (good.size() < k || poor.size() < k) {
      plan.note = "stratification impossible (" + std::to_string(good.size()) + " good, " +
                  std::to_string(poor.size()) + " poor for " + std::to_string(k) +
                  " folds); used unstratified folds";
      stratified = false;
    } else {
      rng.shuffle(std::span(good));
      rng.shuffle(std::span(poor));
      order.insert(order.end(), good.begin(), good.end());
      order.insert(order.end(), poor.begin(), poor.end());
    }
  }
  if (!stratified) {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span(order));
  }
  plan.stratified = stratified;
  for (std::size_t pos = 0; pos < n; ++pos) plan.assignment[order[pos]] = pos % k;
  return plan;
}

}  // namespace sae
