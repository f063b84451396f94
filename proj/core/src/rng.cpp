#include "sae/rng.hpp"

#include <cmath>
#include <numbers>

namespace sae {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::string_view purpose,
                          std::uint64_t index) noexcept {
  // FNV-1a over the tag, then fold everything through splitmix64.
  std::uint64_t tag = 0xcbf29ce484222325ULL;
  for (unsigned char c : purpose) {
    tag ^= c;
    tag *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(parent ^ splitmix64(tag)) + index);
}

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

double SeededRng::uniform() noexcept {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t SeededRng::below(std::size_t n) noexcept {
  if (n <= 1) return 0;
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  // Largest multiple of bound that fits; reject draws beyond it.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % bound);
}

double SeededRng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

SeededRng SeededRng::derive(std::string_view purpose, std::uint64_t index) const noexcept {
  return SeededRng(derive_seed(seed_, purpose, index));
}

Matrix init_weights(std::size_t rows, std::size_t cols, SeededRng& rng) {
  Matrix m(rows, cols);
  const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
  for (double& v : m.data()) v = rng.uniform(-bound, bound);
  return m;
}

}  // namespace sae
