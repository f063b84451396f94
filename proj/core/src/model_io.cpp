#include "sae/model_io.hpp"

#include <cmath>

#include "sae/error.hpp"
#include "sae/json_io.hpp"

namespace sae {

using nlohmann::json;

namespace {

constexpr const char* kFormatTag = "sae-stacked-model";

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw FormatError(std::string("cannot serialize non-finite value in ") + what);
    }
  }
}

json matrix_json(const Matrix& m) {
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

Matrix matrix_from(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  return Matrix(rows, cols, j.at("data").get<std::vector<double>>());
}

}  // namespace

std::string save_model(const StackedModel& m) {
  m.validate();
  json layers = json::array();
  for (const auto& layer : m.layers) {
    require_finite(layer.w_enc.data(), "encoder weights");
    require_finite(layer.b_enc, "encoder bias");
    require_finite(layer.w_dec.data(), "decoder weights");
    require_finite(layer.b_dec, "decoder bias");
    layers.push_back({{"w_enc", matrix_json(layer.w_enc)},
                      {"b_enc", layer.b_enc},
                      {"w_dec", matrix_json(layer.w_dec)},
                      {"b_dec", layer.b_dec}});
  }
  require_finite(m.head_w, "head weights");
  require_finite(std::span(&m.head_b, 1), "head bias");

  json doc = {{"format", kFormatTag},
              {"format_version", kModelFormatVersion},
              {"config", to_json(m.config)},
              {"metadata",
               {{"attribute_set", m.metadata.attribute_set},
                {"attributes", m.metadata.attributes},
                {"threshold_days", m.metadata.threshold_days}}},
              {"norm_stats", {{"min", m.norm_stats.min}, {"max", m.norm_stats.max}}},
              {"layers", std::move(layers)},
              {"head", {{"w", m.head_w}, {"b", m.head_b}}}};
  return doc.dump(1) + "\n";
}

StackedModel load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("format") || doc.at("format") != kFormatTag) {
    throw FormatError("not a stacked-model file (missing or wrong 'format' tag)");
  }
  if (!doc.contains("format_version") || !doc.at("format_version").is_number_integer()) {
    throw FormatError("model file has no integer format_version");
  }
  const int version = doc.at("format_version").get<int>();
  if (version != kModelFormatVersion) {
    throw FormatError("model format version " + std::to_string(version) +
                      " is not supported (expected " + std::to_string(kModelFormatVersion) +
                      ")");
  }

  StackedModel m;
  try {
    update_from_json(m.config, doc.at("config"), /*require_all=*/true);
    const json& meta = doc.at("metadata");
    m.metadata.attribute_set = meta.at("attribute_set").get<std::string>();
    m.metadata.attributes = meta.at("attributes").get<std::vector<std::string>>();
    m.metadata.threshold_days = meta.at("threshold_days").get<long>();
    m.norm_stats.min = doc.at("norm_stats").at("min").get<std::vector<double>>();
    m.norm_stats.max = doc.at("norm_stats").at("max").get<std::vector<double>>();
    for (const json& layer : doc.at("layers")) {
      m.layers.push_back({matrix_from(layer.at("w_enc")), layer.at("b_enc").get<Vector>(),
                          matrix_from(layer.at("w_dec")), layer.at("b_dec").get<Vector>()});
    }
    m.head_w = doc.at("head").at("w").get<Vector>();
    m.head_b = doc.at("head").at("b").get<double>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("model file does not match the schema: ") + e.what());
  } catch (const ConfigError& e) {
    throw FormatError(std::string("model file has an invalid config: ") + e.what());
  } catch (const DimensionError& e) {
    throw FormatError(std::string("model file has inconsistent shapes: ") + e.what());
  }
  if (m.norm_stats.min.size() != m.norm_stats.max.size()) {
    throw FormatError("model normalizer min/max lengths differ");
  }
  if (!m.metadata.attributes.empty() && m.metadata.attributes.size() != m.config.input_dim) {
    throw FormatError("model lists " + std::to_string(m.metadata.attributes.size()) +
                      " attributes for input dimension " + std::to_string(m.config.input_dim));
  }
  try {
    m.config.validate();
    m.validate();
  } catch (const Error& e) {
    throw FormatError(std::string("model file is inconsistent: ") + e.what());
  }
  return m;
}

}  // namespace sae
