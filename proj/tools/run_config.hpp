#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sae/importance.hpp"
#include "sae/network.hpp"

namespace sae::cli {

enum class ReportFormat { table, structured };

ReportFormat parse_report_format(std::string_view text);

// Settings shared by all commands. Resolution order: preset defaults, then the
// config file, then command-line flags.
struct RunConfig {
  std::string preset = "default";
  std::optional<std::string> cohort;
  std::string set = "FULL34";
  NetworkConfig network;
  std::size_t k = 10;
  bool stratified = true;
  long threshold_days = kDefaultThresholdDays;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  ReportFormat format = ReportFormat::table;
  std::size_t repeats = 5;
  ImportanceMethod method = ImportanceMethod::drop_column;
  std::size_t threads = 1;

  CvOptions cv_options() const;
  void validate() const;  // throws ConfigError
};

// "default", "paper" or "paper-linear".
//
// paper:   hidden 20-15-10, learning rate 1.0, momentum 1.0, batch 10 for both
//          phases, sigmoid head, k=10, 730 days, unstratified folds.
// default: same architecture, learning rate 0.5 and momentum 0.9, stratified.
RunConfig preset_config(std::string_view name);
const std::vector<std::string>& preset_names();

// Applies a JSON config document on top of `cfg`. Recognized keys: preset,
// cohort, set, k, stratified, threshold_days, seed, out, format, repeats,
// method, threads, network (a partial network config). A "preset" key, when
// honored, resets cfg to that preset before the remaining keys apply.
void apply_config_document(RunConfig& cfg, const nlohmann::json& doc, bool honor_preset);

std::string read_text_file(const std::string& path);  // throws DataError naming the path

}  // namespace sae::cli
