#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sae/error.hpp"
#include "sae/json_io.hpp"

namespace sae::cli {

using nlohmann::json;

ReportFormat parse_report_format(std::string_view text) {
  if (text == "table") return ReportFormat::table;
  if (text == "structured") return ReportFormat::structured;
  throw ConfigError("unknown report format '" + std::string(text) +
                    "' (expected table|structured)");
}

CvOptions RunConfig::cv_options() const {
  CvOptions o;
  o.k = k;
  o.stratified = stratified;
  o.threshold_days = threshold_days;
  o.threads = threads;
  return o;
}

void RunConfig::validate() const {
  network.validate();
  if (k < 2) throw ConfigError("k must be >= 2");
  if (threshold_days <= 0) throw ConfigError("threshold_days must be > 0");
  if (repeats == 0) throw ConfigError("repeats must be >= 1");
  attribute_set_from_spec(set);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"default", "paper", "paper-linear"};
  return names;
}

RunConfig preset_config(std::string_view name) {
  RunConfig cfg;
  cfg.preset = std::string(name);
  if (name == "default") return cfg;
  if (name == "paper" || name == "paper-linear") {
    cfg.network.hidden_sizes = {20, 15, 10};
    cfg.network.pretrain.learning_rate = 1.0;
    cfg.network.pretrain.momentum = 1.0;
    cfg.network.pretrain.batch_size = 10;
    cfg.network.finetune.learning_rate = 1.0;
    cfg.network.finetune.momentum = 1.0;
    cfg.network.finetune.batch_size = 10;
    cfg.network.head = name == "paper" ? HeadType::sigmoid : HeadType::linear;
    cfg.network.decision_threshold = 0.5;
    cfg.k = 10;
    cfg.threshold_days = 730;
    cfg.stratified = false;
    return cfg;
  }
  throw ConfigError("unknown preset '" + std::string(name) +
                    "' (expected default|paper|paper-linear)");
}

namespace {

template <typename T>
T get_as(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + std::string(key) + "' in config file: " + e.what());
  }
}

}  // namespace

void apply_config_document(RunConfig& cfg, const json& doc, bool honor_preset) {
  if (!doc.is_object()) throw ConfigError("config file must contain a JSON object");
  static const std::vector<std::string> known{
      "preset", "cohort", "set",    "k",      "stratified", "threshold_days", "seed",
      "out",    "format", "repeats", "method", "threads",    "network"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown key '" + key + "' in config file");
    }
  }
  RunConfig next = cfg;
  if (honor_preset && doc.contains("preset")) {
    next = preset_config(get_as<std::string>(doc, "preset"));
  }
  if (doc.contains("cohort")) next.cohort = get_as<std::string>(doc, "cohort");
  if (doc.contains("set")) next.set = get_as<std::string>(doc, "set");
  if (doc.contains("k")) next.k = get_as<std::size_t>(doc, "k");
  if (doc.contains("stratified")) next.stratified = get_as<bool>(doc, "stratified");
  if (doc.contains("threshold_days")) next.threshold_days = get_as<long>(doc, "threshold_days");
  if (doc.contains("seed")) next.seed = get_as<std::uint64_t>(doc, "seed");
  if (doc.contains("out")) next.out = get_as<std::string>(doc, "out");
  if (doc.contains("format")) next.format = parse_report_format(get_as<std::string>(doc, "format"));
  if (doc.contains("repeats")) next.repeats = get_as<std::size_t>(doc, "repeats");
  if (doc.contains("method")) {
    next.method = parse_importance_method(get_as<std::string>(doc, "method"));
  }
  if (doc.contains("threads")) next.threads = get_as<std::size_t>(doc, "threads");
  if (doc.contains("network")) update_from_json(next.network, doc.at("network"));
  cfg = std::move(next);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("error reading '" + path + "'");
  return buf.str();
}

}  // namespace sae::cli
