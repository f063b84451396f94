#pragma once

#include <nlohmann/json.hpp>

#include "sae/autoencoder.hpp"
#include "sae/metrics.hpp"
#include "sae/network.hpp"

namespace sae {

nlohmann::json to_json(const SgdConfig& c);
nlohmann::json to_json(const SparsityConfig& c);
nlohmann::json to_json(const NetworkConfig& c);
nlohmann::json to_json(const ConfusionMatrix& cm);

// Overwrite the fields present in `j`. Unknown keys are rejected. With
// `require_all`, every field must be present (used for model files).
// Throws ConfigError; the target is untouched on failure.
void update_from_json(SgdConfig& c, const nlohmann::json& j, bool require_all = false);
void update_from_json(SparsityConfig& c, const nlohmann::json& j, bool require_all = false);
void update_from_json(NetworkConfig& c, const nlohmann::json& j, bool require_all = false);

}  // namespace sae
