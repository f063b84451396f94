#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "run_config.hpp"
#include "sae/cohort.hpp"
#include "sae/cross_validation.hpp"
#include "sae/error.hpp"
#include "sae/importance.hpp"
#include "sae/metrics.hpp"
#include "sae/model_io.hpp"
#include "sae/network.hpp"
#include "sae/report.hpp"
#include "sae/synthetic.hpp"

namespace sae::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Command-line values; unset means "keep what preset/config file says".
struct Flags {
  std::optional<std::string> preset;
  std::optional<std::string> config;
  std::optional<std::string> cohort;
  std::optional<std::string> set;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::size_t> k;
  std::optional<long> threshold_days;
  std::optional<bool> stratified;
  std::optional<std::size_t> threads;
  std::optional<std::string> hidden;
  std::optional<std::string> head;
  std::optional<double> lr;
  std::optional<double> momentum;
  std::optional<std::size_t> batch;
  std::optional<double> pretrain_lr;
  std::optional<double> pretrain_momentum;
  std::optional<std::size_t> pretrain_epochs;
  std::optional<std::size_t> finetune_epochs;
  std::optional<double> rho;
  std::optional<double> beta;
  std::optional<double> decision_threshold;
  // rank
  std::optional<std::size_t> repeats;
  std::optional<std::string> method;
  // predict
  std::optional<std::string> model;
  // synth
  std::size_t n = 94;
  std::string planted = "age:1.5,complex:1,TP53:1.5,FLT3:1,NPM1:-1";
  double noise = 0.3;
};

struct Output {
  std::string console;
  std::vector<std::pair<std::string, std::string>> files;
};

void add_shared(CLI::App* cmd, Flags& f) {
  cmd->add_option("--cohort", f.cohort, "Cohort CSV file");
  cmd->add_option("--set", f.set,
                  "Attribute set: FULL34, TOP14, NO_CYTO, NO_AGE, NO_MUT or a comma list");
  cmd->add_option("--config", f.config, "JSON config file (overrides preset, below flags)");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--out", f.out, "Output path (prefix for report commands)");
  cmd->add_option("--format", f.format, "Console format: table | structured");
}

void add_network(CLI::App* cmd, Flags& f) {
  cmd->add_option("--preset", f.preset, "Base settings: default | paper | paper-linear");
  cmd->add_option("--k", f.k, "Number of cross-validation folds");
  cmd->add_option("--threshold-days", f.threshold_days, "Days-to-death label threshold");
  cmd->add_flag("--stratified,!--no-stratified", f.stratified, "Stratify folds by label");
  cmd->add_option("--threads", f.threads, "Folds trained concurrently (0 = all cores)");
  cmd->add_option("--hidden", f.hidden, "Hidden layer sizes, e.g. 20,15,10");
  cmd->add_option("--head", f.head, "Classifier head: sigmoid | linear");
  cmd->add_option("--lr", f.lr, "Learning rate for pretraining and fine-tuning");
  cmd->add_option("--momentum", f.momentum, "Momentum for pretraining and fine-tuning");
  cmd->add_option("--batch", f.batch, "Mini-batch size for both phases");
  cmd->add_option("--pretrain-lr", f.pretrain_lr, "Pretraining learning rate");
  cmd->add_option("--pretrain-momentum", f.pretrain_momentum, "Pretraining momentum");
  cmd->add_option("--pretrain-epochs", f.pretrain_epochs, "Epochs per autoencoder layer");
  cmd->add_option("--finetune-epochs", f.finetune_epochs, "Fine-tuning epochs");
  cmd->add_option("--rho", f.rho, "Sparsity target activation");
  cmd->add_option("--beta", f.beta, "Sparsity penalty weight");
  cmd->add_option("--decision-threshold", f.decision_threshold, "Score threshold for 'good'");
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string_view part(text.data() + start, end - start);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty() || v == 0) {
      throw ConfigError("bad hidden layer list '" + text + "'");
    }
    sizes.push_back(v);
    start = end + 1;
  }
  return sizes;
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg = preset_config(f.preset.value_or("default"));
  if (f.config) {
    json doc;
    try {
      doc = json::parse(read_text_file(*f.config));
    } catch (const json::parse_error& e) {
      throw ConfigError("config file '" + *f.config + "' is not valid JSON: " + e.what());
    }
    apply_config_document(cfg, doc, /*honor_preset=*/!f.preset);
  }
  if (f.cohort) cfg.cohort = f.cohort;
  if (f.set) cfg.set = *f.set;
  if (f.seed) cfg.seed = *f.seed;
  if (f.out) cfg.out = f.out;
  if (f.format) cfg.format = parse_report_format(*f.format);
  if (f.k) cfg.k = *f.k;
  if (f.threshold_days) cfg.threshold_days = *f.threshold_days;
  if (f.stratified) cfg.stratified = *f.stratified;
  if (f.threads) cfg.threads = *f.threads;
  if (f.repeats) cfg.repeats = *f.repeats;
  if (f.method) cfg.method = parse_importance_method(*f.method);

  NetworkConfig& n = cfg.network;
  if (f.hidden) n.hidden_sizes = parse_sizes(*f.hidden);
  if (f.head) n.head = parse_head_type(*f.head);
  if (f.lr) n.pretrain.learning_rate = n.finetune.learning_rate = *f.lr;
  if (f.momentum) n.pretrain.momentum = n.finetune.momentum = *f.momentum;
  if (f.batch) n.pretrain.batch_size = n.finetune.batch_size = *f.batch;
  if (f.pretrain_lr) n.pretrain.learning_rate = *f.pretrain_lr;
  if (f.pretrain_momentum) n.pretrain.momentum = *f.pretrain_momentum;
  if (f.pretrain_epochs) n.pretrain.epochs = *f.pretrain_epochs;
  if (f.finetune_epochs) n.finetune.epochs = *f.finetune_epochs;
  if (f.rho) n.sparsity.rho = *f.rho;
  if (f.beta) n.sparsity.beta = *f.beta;
  if (f.decision_threshold) n.decision_threshold = *f.decision_threshold;
  n.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

void check_output_target(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw ConfigError("output directory '" + parent.string() + "' does not exist");
  }
}

std::vector<CaseRecord> load_cohort(const RunConfig& cfg, LabelColumn labels) {
  if (!cfg.cohort) throw ConfigError("--cohort is required");
  return parse_cohort(read_text_file(*cfg.cohort), labels);
}

void add_report(Output& o, const RunConfig& cfg, std::string table, std::string structured) {
  o.console = cfg.format == ReportFormat::table ? table : structured;
  if (cfg.out) {
    o.files.emplace_back(*cfg.out + ".txt", std::move(table));
    o.files.emplace_back(*cfg.out + ".json", std::move(structured));
  }
}

Output cmd_evaluate(const RunConfig& cfg) {
  if (cfg.out) check_output_target(*cfg.out);
  const auto cohort = load_cohort(cfg, LabelColumn::required);
  const AttributeSet set = attribute_set_from_spec(cfg.set);
  const EvalReport report = run_cv(cohort, set, cfg.network, cfg.cv_options(), SeededRng(cfg.seed));
  Output o;
  add_report(o, cfg, render_table(report), render_structured(report));
  return o;
}

Output cmd_train(const RunConfig& cfg) {
  if (!cfg.out) throw ConfigError("--out is required for train (model file path)");
  check_output_target(*cfg.out);
  const auto cohort = load_cohort(cfg, LabelColumn::required);
  const AttributeSet set = attribute_set_from_spec(cfg.set);
  const auto raw = select_attributes(cohort, set);
  const auto labels = cohort_labels(cohort, cfg.threshold_days);

  NetworkConfig net = cfg.network;
  net.input_dim = set.size();
  const NormStats stats = fit_normalizer(raw);
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    samples.push_back({apply_normalizer(stats, raw[i]), target_of(labels[i])});
  }
  SeededRng rng = SeededRng(cfg.seed).derive("train");
  StackedModel model = train_model(net, samples, rng);
  model.norm_stats = stats;
  model.metadata = {set.name, set.attributes, cfg.threshold_days};

  Output o;
  o.files.emplace_back(*cfg.out, save_model(model));
  o.console = "trained " + set.name + " model (" + std::to_string(set.size()) +
              " attributes) on " + std::to_string(cohort.size()) + " cases; wrote " + *cfg.out +
              "\n";
  return o;
}

Output cmd_predict(const RunConfig& cfg, const Flags& f) {
  if (!f.model) throw ConfigError("--model is required for predict");
  if (cfg.out) check_output_target(*cfg.out);
  const StackedModel model = load_model(read_text_file(*f.model));
  const AttributeSet model_set{model.metadata.attribute_set, model.metadata.attributes};
  if (model_set.attributes.empty()) throw FormatError("model file does not list its attributes");
  if (f.set) {
    const AttributeSet requested = attribute_set_from_spec(*f.set);
    if (requested.attributes != model_set.attributes) {
      throw ConfigError("attribute set mismatch: model was trained on " + model_set.name + " (" +
                        std::to_string(model_set.size()) + " attributes) but --set requested " +
                        requested.name + " (" + std::to_string(requested.size()) +
                        " attributes)");
    }
  }
  const long threshold = f.threshold_days.value_or(model.metadata.threshold_days);
  const auto cohort = load_cohort(cfg, LabelColumn::optional);
  const auto raw = select_attributes(cohort, model_set);
  const bool labeled = std::ranges::all_of(cohort, [](const CaseRecord& r) {
    return r.dtd_days.has_value();
  });

  ConfusionMatrix cm;
  json rows = json::array();
  std::string csv = "case_id,score,label\n";
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    const Prediction p = predict(model, apply_normalizer(model.norm_stats, raw[i]));
    char score[32];
    const auto res = std::to_chars(score, score + sizeof score, p.score);
    csv += cohort[i].case_id + "," + std::string(score, res.ptr) + "," +
           std::string(to_string(p.label)) + "\n";
    rows.push_back({{"case_id", cohort[i].case_id},
                    {"score", p.score},
                    {"label", std::string(to_string(p.label))}});
    if (labeled) cm.add(p.label, binarize_label(*cohort[i].dtd_days, threshold));
  }

  json doc = {{"format", "sae-predictions"},
              {"format_version", kReportFormatVersion},
              {"attribute_set", model_set.name},
              {"predictions", std::move(rows)}};
  if (labeled) {
    const Metrics m = compute_metrics(cm);
    const auto pct = [](const std::optional<double>& v) {
      return v ? json(100.0 * *v) : json(nullptr);
    };
    doc["metrics"] = {{"accuracy_pct", 100.0 * m.accuracy},
                      {"sensitivity_pct", pct(m.sensitivity)},
                      {"specificity_pct", pct(m.specificity)},
                      {"confusion", {{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}}},
                      {"threshold_days", threshold}};
    const auto show = [](const std::optional<double>& v) {
      return v ? std::to_string(100.0 * *v) + "%" : std::string("n/a");
    };
    csv += "\n# metrics (threshold " + std::to_string(threshold) + " days)\n";
    csv += "# accuracy " + std::to_string(100.0 * m.accuracy) + "%\n";
    csv += "# sensitivity " + show(m.sensitivity) + "\n";
    csv += "# specificity " + show(m.specificity) + "\n";
  }
  std::string structured = doc.dump(2) + "\n";
  Output o;
  o.console = cfg.format == ReportFormat::table ? csv : structured;
  if (cfg.out) o.files.emplace_back(*cfg.out, cfg.format == ReportFormat::table ? csv : structured);
  return o;
}

Output cmd_rank(const RunConfig& cfg) {
  if (cfg.out) check_output_target(*cfg.out);
  const auto cohort = load_cohort(cfg, LabelColumn::required);
  const AttributeSet set = attribute_set_from_spec(cfg.set);
  RankOptions options;
  options.repeats = cfg.repeats;
  options.method = cfg.method;
  options.cv = cfg.cv_options();
  const RankingReport report = rank_attributes(cohort, set, cfg.network, options, SeededRng(cfg.seed));
  Output o;
  add_report(o, cfg, render_table(report), render_structured(report));
  return o;
}

Output cmd_ablate(const RunConfig& cfg) {
  if (cfg.out) check_output_target(*cfg.out);
  const auto cohort = load_cohort(cfg, LabelColumn::required);
  const AblationReport report =
      group_ablation(cohort, cfg.network, cfg.cv_options(), SeededRng(cfg.seed));
  Output o;
  add_report(o, cfg, render_table(report), render_structured(report));
  return o;
}

Output cmd_synth(const RunConfig& cfg, const Flags& f) {
  if (cfg.out) check_output_target(*cfg.out);
  const std::vector<PlantedEffect> planted = parse_planted(f.planted);
  SeededRng rng = SeededRng(cfg.seed).derive("synth");
  const auto cohort = generate_synthetic_cohort(f.n, planted, f.noise, rng, cfg.threshold_days);
  std::string csv = write_cohort_csv(cohort);
  Output o;
  if (cfg.out) {
    o.files.emplace_back(*cfg.out, std::move(csv));
    o.console = "wrote " + std::to_string(cohort.size()) + " synthetic cases to " + *cfg.out + "\n";
  } else {
    o.console = std::move(csv);
  }
  return o;
}

void write_files(const std::vector<std::pair<std::string, std::string>>& files) {
  for (const auto& [path, content] : files) {
    const std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw DataError("cannot write '" + path + "'");
      out << content;
      if (!out.flush()) throw DataError("cannot write '" + path + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
      fs::remove(tmp, ec);
      throw DataError("cannot write '" + path + "'");
    }
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stacked sparse autoencoder prognosis classifier"};
  app.name("sae");
  app.require_subcommand(1, 1);

  Flags f;
  CLI::App* evaluate = app.add_subcommand("evaluate", "k-fold cross-validation report");
  CLI::App* train = app.add_subcommand("train", "Train on a whole cohort and save the model");
  CLI::App* predict_cmd = app.add_subcommand("predict", "Score a cohort with a saved model");
  CLI::App* rank = app.add_subcommand("rank", "Rank attributes by cross-validated importance");
  CLI::App* ablate = app.add_subcommand("ablate", "Leave out cytogenetics, age or mutations");
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic cohort CSV");

  for (CLI::App* cmd : {evaluate, train, rank, ablate}) {
    add_shared(cmd, f);
    add_network(cmd, f);
  }
  add_shared(predict_cmd, f);
  predict_cmd->add_option("--model", f.model, "Model file written by train")->required();
  predict_cmd->add_option("--threshold-days", f.threshold_days,
                          "Label threshold for metrics (default: the model's)");
  rank->add_option("--repeats", f.repeats, "Repetitions averaged per attribute");
  rank->add_option("--method", f.method, "drop_column | permutation");
  synth->add_option("--n", f.n, "Number of cases")->check(CLI::PositiveNumber);
  synth->add_option("--planted", f.planted,
                    "Planted effects NAME:WEIGHT,... or 'none'")->capture_default_str();
  synth->add_option("--noise", f.noise, "Noise scale in [0, 1]")->capture_default_str();
  synth->add_option("--seed", f.seed, "Master seed");
  synth->add_option("--out", f.out, "Output CSV (default: stdout)");
  synth->add_option("--threshold-days", f.threshold_days, "Days-to-death label threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const RunConfig cfg = resolve(f);
    Output result;
    if (evaluate->parsed()) result = cmd_evaluate(cfg);
    else if (train->parsed()) result = cmd_train(cfg);
    else if (predict_cmd->parsed()) result = cmd_predict(cfg, f);
    else if (rank->parsed()) result = cmd_rank(cfg);
    else if (ablate->parsed()) result = cmd_ablate(cfg);
    else result = cmd_synth(cfg, f);
    write_files(result.files);
    out << result.console;
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "sae: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "sae: " << e.what() << '\n';
    return kExitData;
  } catch (const DimensionError& e) {
    err << "sae: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "sae: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace sae::cli
