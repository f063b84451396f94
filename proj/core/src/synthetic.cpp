#include "sae/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "sae/error.hpp"

namespace sae {

const std::array<double, kCytoCount> kCytoPrevalence{
    0.07, 0.06, 0.08, 0.03, 0.02, 0.08, 0.07, 0.05, 0.03, 0.12};

const std::array<double, kMutationCount> kMutationPrevalence{
    0.28, 0.04, 0.04, 0.08, 0.04, 0.27, 0.06, 0.10, 0.26, 0.09, 0.10, 0.10,
    0.02, 0.02, 0.08, 0.06, 0.03, 0.04, 0.03, 0.04, 0.05, 0.03, 0.03};

namespace {

constexpr int kMinAge = 20;
constexpr int kMaxAge = 88;
constexpr long kGoodSpanDays = 1500;

double age_value(double age) { return (age - kMinAge) / double(kMaxAge - kMinAge); }

double nominal_mean(std::size_t attribute) {
  if (attribute == 0) return 0.5;
  if (attribute <= kCytoCount) return kCytoPrevalence[attribute - 1];
  return kMutationPrevalence[attribute - 1 - kCytoCount];
}

}  // namespace

std::vector<CaseRecord> generate_synthetic_cohort(std::size_t n,
                                                  const std::vector<PlantedEffect>& planted,
                                                  double noise, SeededRng& rng,
                                                  long threshold_days) {
  if (n == 0) throw ConfigError("synthetic cohort size must be >= 1");
  if (!(noise >= 0.0 && noise <= 1.0)) throw ConfigError("noise must lie in [0, 1]");
  if (threshold_days <= 0) throw ConfigError("label threshold must be > 0 days");

  std::vector<std::pair<std::size_t, double>> effects;
  double center = 0.0;
  for (const PlantedEffect& e : planted) {
    const auto idx = attribute_index(resolve_alias(e.attribute));
    if (!idx) throw ConfigError("unknown planted attribute '" + e.attribute + "'");
    if (!std::isfinite(e.weight)) throw ConfigError("planted weight must be finite");
    effects.emplace_back(*idx, e.weight);
    center += e.weight * nominal_mean(*idx);
  }

  std::vector<CaseRecord> cohort;
  cohort.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CaseRecord r;
    char id[32];
    std::snprintf(id, sizeof id, "SYN-%04zu", i + 1);
    r.case_id = id;
    r.age_years = static_cast<double>(kMinAge + static_cast<int>(rng.below(kMaxAge - kMinAge + 1)));
    for (std::size_t c = 0; c < kCytoCount; ++c) r.cyto[c] = rng.bernoulli(kCytoPrevalence[c]);
    do {
      for (std::size_t m = 0; m < kMutationCount; ++m) {
        r.mut[m] = rng.bernoulli(kMutationPrevalence[m]);
      }
    } while (std::ranges::none_of(r.mut, [](bool b) { return b; }));

    double risk = noise * rng.normal();
    for (auto [idx, weight] : effects) {
      const double v = idx == 0 ? age_value(r.age_years) : r.value(idx);
      risk += weight * v;
    }
    if (risk <= center) {
      r.dtd_days = threshold_days + static_cast<long>(rng.below(kGoodSpanDays));
    } else {
      r.dtd_days = static_cast<long>(rng.below(static_cast<std::size_t>(threshold_days)));
    }
    cohort.push_back(std::move(r));
  }
  return cohort;
}

std::vector<PlantedEffect> parse_planted(std::string_view spec) {
  std::vector<PlantedEffect> out;
  if (spec == "none") return out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string_view::npos) end = spec.size();
    std::string_view item = spec.substr(start, end - start);
    start = end + 1;
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("planted effect '" + std::string(item) + "' must be NAME:WEIGHT");
    }
    const std::string_view name = resolve_alias(item.substr(0, colon));
    const std::string_view w = item.substr(colon + 1);
    double weight = 0.0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
    if (ec != std::errc{} || ptr != w.data() + w.size() || w.empty()) {
      throw ConfigError("planted weight '" + std::string(w) + "' is not a number");
    }
    if (!attribute_index(name)) {
      throw ConfigError("unknown planted attribute '" + std::string(name) + "'");
    }
    out.push_back({std::string(name), weight});
  }
  return out;
}

}  // namespace sae
