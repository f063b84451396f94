#include "sae/cohort.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "sae/error.hpp"

namespace sae {

std::optional<Prognosis> parse_prognosis(std::string_view text) noexcept {
  if (text == "good") return Prognosis::good;
  if (text == "poor") return Prognosis::poor;
  return std::nullopt;
}

const std::vector<std::string>& canonical_attributes() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    out.emplace_back(kAgeAttribute);
    for (auto n : kCytoAttributes) out.emplace_back(n);
    for (auto n : kMutationAttributes) out.emplace_back(n);
    return out;
  }();
  return names;
}

std::optional<std::size_t> attribute_index(std::string_view name) noexcept {
  const auto& names = canonical_attributes();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

std::string_view resolve_alias(std::string_view name) noexcept {
  if (name == "FLT3-ITD" || name == "FLT3_ITD") return "FLT3";
  if (name == "DNMT3") return "DNMT3A";
  return name;
}

double CaseRecord::value(std::size_t attribute) const {
  if (attribute == 0) return age_years;
  if (attribute <= kCytoCount) return cyto[attribute - 1] ? 1.0 : 0.0;
  if (attribute < kAttributeCount) return mut[attribute - 1 - kCytoCount] ? 1.0 : 0.0;
  throw DimensionError("attribute index " + std::to_string(attribute) + " out of range");
}

void AttributeSet::validate() const {
  if (attributes.empty()) throw ConfigError("attribute set '" + name + "' is empty");
  std::unordered_set<std::string_view> seen;
  for (const auto& a : attributes) {
    if (!attribute_index(a)) {
      throw ConfigError("attribute set '" + name + "' names unknown attribute '" + a + "'");
    }
    if (!seen.insert(a).second) {
      throw ConfigError("attribute set '" + name + "' lists '" + a + "' twice");
    }
  }
}

std::vector<std::size_t> AttributeSet::indices() const {
  validate();
  std::vector<std::size_t> out;
  out.reserve(attributes.size());
  for (const auto& a : attributes) out.push_back(*attribute_index(a));
  return out;
}

namespace presets {

AttributeSet full34() { return {"FULL34", canonical_attributes()}; }

AttributeSet top14() {
  return {"TOP14",
          {"age", "tri8", "del5", "del7", "complex", "t_8_21", "inv_16", "t_15_17", "FLT3",
           "NPM1", "TP53", "DNMT3A", "KIT", "CEBPA"}};
}

AttributeSet no_cyto() {
  AttributeSet s{"NO_CYTO", {std::string(kAgeAttribute)}};
  for (auto n : kMutationAttributes) s.attributes.emplace_back(n);
  return s;
}

AttributeSet no_age() {
  AttributeSet s{"NO_AGE", {}};
  for (auto n : kCytoAttributes) s.attributes.emplace_back(n);
  for (auto n : kMutationAttributes) s.attributes.emplace_back(n);
  return s;
}

AttributeSet no_mut() {
  AttributeSet s{"NO_MUT", {std::string(kAgeAttribute)}};
  for (auto n : kCytoAttributes) s.attributes.emplace_back(n);
  return s;
}

}  // namespace presets

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

AttributeSet attribute_set_from_spec(std::string_view spec) {
  spec = trim(spec);
  if (spec == "FULL34") return presets::full34();
  if (spec == "TOP14") return presets::top14();
  if (spec == "NO_CYTO") return presets::no_cyto();
  if (spec == "NO_AGE") return presets::no_age();
  if (spec == "NO_MUT") return presets::no_mut();
  AttributeSet s{"custom", {}};
  for (auto part : split(spec, ',')) {
    if (part.empty()) continue;
    s.attributes.emplace_back(resolve_alias(part));
  }
  if (s.attributes.empty()) throw ConfigError("empty attribute set specification");
  s.validate();
  return s;
}

AttributeSet without(const AttributeSet& set, std::string_view attribute) {
  AttributeSet out{set.name + "-" + std::string(attribute), {}};
  for (const auto& a : set.attributes) {
    if (a != attribute) out.attributes.push_back(a);
  }
  if (out.attributes.size() == set.attributes.size()) {
    throw ConfigError("attribute '" + std::string(attribute) + "' is not in set '" + set.name +
                      "'");
  }
  return out;
}

std::vector<CaseRecord> parse_cohort(std::string_view csv_text, LabelColumn labels) {
  std::vector<std::string_view> lines;
  for (auto line : split(csv_text, '\n')) lines.push_back(line);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "", "cohort file is empty");
  if (lines.front().starts_with("\xEF\xBB\xBF")) lines.front().remove_prefix(3);

  const auto header = split(lines.front(), ',');
  std::unordered_map<std::string_view, std::size_t> column;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string_view name = header[c];
    const bool known = name == "case_id" || name == "dtd_days" || attribute_index(name);
    if (!known) throw ParseError(1, std::string(name), "unknown column");
    if (!column.emplace(name, c).second) throw ParseError(1, std::string(name), "duplicate column");
  }
  const auto require = [&](std::string_view name) {
    if (!column.contains(name)) throw ParseError(1, std::string(name), "missing column");
  };
  require("case_id");
  for (const auto& a : canonical_attributes()) require(a);
  const bool has_dtd = column.contains("dtd_days");
  if (labels == LabelColumn::required) require("dtd_days");

  std::vector<CaseRecord> records;
  std::unordered_set<std::string> ids;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li + 1;
    if (lines[li].empty()) throw ParseError(row, "", "blank line inside data");
    const auto fields = split(lines[li], ',');
    if (fields.size() != header.size()) {
      throw ParseError(row, "", "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    const auto field = [&](std::string_view name) { return fields[column.at(name)]; };

    CaseRecord rec;
    rec.case_id = std::string(field("case_id"));
    if (rec.case_id.empty()) throw ParseError(row, "case_id", "empty case id");
    if (!ids.insert(rec.case_id).second) {
      throw ParseError(row, "case_id", "duplicate case id '" + rec.case_id + "'");
    }

    {
      const std::string_view text = field("age");
      double age = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), age);
      if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError(row, "age", "'" + std::string(text) + "' is not a decimal number");
      }
      if (!std::isfinite(age) || age < 0.0 || age > 120.0) {
        throw ParseError(row, "age", "age " + std::string(text) + " outside 0-120");
      }
      rec.age_years = age;
    }

    const auto flag = [&](std::string_view name) {
      const std::string_view text = field(name);
      if (text == "0") return false;
      if (text == "1") return true;
      throw ParseError(row, std::string(name), "flag must be 0 or 1, got '" + std::string(text) +
                                                   "'");
    };
    for (std::size_t i = 0; i < kCytoCount; ++i) rec.cyto[i] = flag(kCytoAttributes[i]);
    for (std::size_t i = 0; i < kMutationCount; ++i) rec.mut[i] = flag(kMutationAttributes[i]);
    if (std::ranges::none_of(rec.mut, [](bool b) { return b; })) {
      throw ParseError(row, "", "case has no mutation flag set (inclusion rule)");
    }

    if (has_dtd) {
      const std::string_view text = field("dtd_days");
      long dtd = 0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), dtd);
      if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError(row, "dtd_days", "'" + std::string(text) + "' is not an integer");
      }
      if (dtd < 0) throw ParseError(row, "dtd_days", "negative days-to-death");
      rec.dtd_days = dtd;
    }
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw ParseError(0, "", "cohort has no data rows");
  return records;
}

std::string write_cohort_csv(std::span<const CaseRecord> records) {
  const bool any_dtd =
      std::ranges::any_of(records, [](const CaseRecord& r) { return r.dtd_days.has_value(); });
  std::ostringstream out;
  out << "case_id";
  for (const auto& a : canonical_attributes()) out << ',' << a;
  if (any_dtd) out << ",dtd_days";
  out << '\n';
  for (const CaseRecord& r : records) {
    if (any_dtd && !r.dtd_days) {
      throw DataError("case '" + r.case_id + "' has no dtd_days while others do");
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, r.age_years);
    out << r.case_id << ',' << std::string_view(buf, res.ptr);
    for (bool f : r.cyto) out << ',' << (f ? '1' : '0');
    for (bool f : r.mut) out << ',' << (f ? '1' : '0');
    if (any_dtd) out << ',' << *r.dtd_days;
    out << '\n';
  }
  return out.str();
}

Prognosis binarize_label(long dtd_days, long threshold_days) {
  return dtd_days >= threshold_days ? Prognosis::good : Prognosis::poor;
}

std::vector<Vector> select_attributes(std::span<const CaseRecord> records,
                                      const AttributeSet& set) {
  const std::vector<std::size_t> idx = set.indices();
  std::vector<Vector> rows;
  rows.reserve(records.size());
  for (const CaseRecord& r : records) {
    Vector row(idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) row[c] = r.value(idx[c]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Prognosis> cohort_labels(std::span<const CaseRecord> records, long threshold_days) {
  if (threshold_days <= 0) throw ConfigError("label threshold must be > 0 days");
  std::vector<Prognosis> labels;
  labels.reserve(records.size());
  for (const CaseRecord& r : records) {
    if (!r.dtd_days) throw DataError("case '" + r.case_id + "' has no dtd_days label");
    labels.push_back(binarize_label(*r.dtd_days, threshold_days));
  }
  return labels;
}

}  // namespace sae
