#pragma once

#include <string>
#include <string_view>

#include "sae/network.hpp"

namespace sae {

inline constexpr int kModelFormatVersion = 1;

// JSON document: {format, format_version, config, metadata, norm_stats,
// layers[], head}. Doubles are written in shortest round-trip form, so
// load_model(save_model(m)) == m bit for bit. Throws FormatError on
// non-finite parameters.
std::string save_model(const StackedModel& m);

// Throws FormatError on malformed JSON, wrong format tag or version, missing or
// mistyped fields, and shape inconsistencies.
StackedModel load_model(std::string_view text);

}  // namespace sae
