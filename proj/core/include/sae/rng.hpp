#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "sae/linalg.hpp"

namespace sae {

// Deterministic random stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Distributions are implemented here rather than taken from
// <random> because the standard leaves their algorithms to the vendor:
//   uniform()  top 53 bits of one draw scaled into [0, 1)
//   below(n)   rejection sampling on the top bits, unbiased
//   normal()   Box-Muller, both variates used
//   shuffle()  Fisher-Yates from the back using below()
//
// Independent streams derive from a master seed with derive(), which mixes the
// parent seed with a purpose tag and an index through splitmix64.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept { return engine_(); }
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) noexcept;
  double normal() noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }

  template <typename T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  // Child stream; a pure function of (this stream's seed, purpose, index),
  // unaffected by how many values have been drawn from this stream.
  SeededRng derive(std::string_view purpose, std::uint64_t index = 0) const noexcept;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t parent, std::string_view purpose,
                          std::uint64_t index = 0) noexcept;

// Entries uniform in [-1/sqrt(cols), +1/sqrt(cols)].
Matrix init_weights(std::size_t rows, std::size_t cols, SeededRng& rng);

}  // namespace sae
