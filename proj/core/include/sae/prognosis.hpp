#pragma once

#include <optional>
#include <string_view>

namespace sae {

// Binary outcome. `good` is the positive class everywhere (confusion
// matrices, sensitivity, training target 1).
enum class Prognosis { poor = 0, good = 1 };

constexpr double target_of(Prognosis p) noexcept { return p == Prognosis::good ? 1.0 : 0.0; }

constexpr std::string_view to_string(Prognosis p) noexcept {
  return p == Prognosis::good ? "good" : "poor";
}

std::optional<Prognosis> parse_prognosis(std::string_view text) noexcept;

}  // namespace sae
