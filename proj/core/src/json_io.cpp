#include "sae/json_io.hpp"

#include <initializer_list>
#include <string>

#include "sae/error.hpp"

namespace sae {

using nlohmann::json;

json to_json(const SgdConfig& c) {
  return {{"learning_rate", c.learning_rate},
          {"momentum", c.momentum},
          {"batch_size", c.batch_size},
          {"epochs", c.epochs}};
}

json to_json(const SparsityConfig& c) { return {{"rho", c.rho}, {"beta", c.beta}}; }

json to_json(const NetworkConfig& c) {
  return {{"input_dim", c.input_dim},
          {"hidden_sizes", c.hidden_sizes},
          {"head", std::string(to_string(c.head))},
          {"sparsity", to_json(c.sparsity)},
          {"pretrain", to_json(c.pretrain)},
          {"finetune", to_json(c.finetune)},
          {"decision_threshold", c.decision_threshold},
          {"seed", c.seed}};
}

json to_json(const ConfusionMatrix& cm) {
  return {{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}};
}

namespace {

void check_keys(const json& j, std::string_view where, std::initializer_list<const char*> keys,
                bool require_all) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
  if (require_all) {
    for (const char* k : keys) {
      if (!j.contains(k)) throw ConfigError("missing key '" + std::string(k) + "' in " +
                                            std::string(where));
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, std::string_view where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + std::string(where) +
                      ": " + e.what());
  }
}

}  // namespace

void update_from_json(SgdConfig& c, const json& j, bool require_all) {
  check_keys(j, "sgd config", {"learning_rate", "momentum", "batch_size", "epochs"},
             require_all);
  SgdConfig next = c;
  read(j, "learning_rate", next.learning_rate, "sgd config");
  read(j, "momentum", next.momentum, "sgd config");
  read(j, "batch_size", next.batch_size, "sgd config");
  read(j, "epochs", next.epochs, "sgd config");
  c = next;
}

void update_from_json(SparsityConfig& c, const json& j, bool require_all) {
  check_keys(j, "sparsity config", {"rho", "beta"}, require_all);
  SparsityConfig next = c;
  read(j, "rho", next.rho, "sparsity config");
  read(j, "beta", next.beta, "sparsity config");
  c = next;
}

void update_from_json(NetworkConfig& c, const json& j, bool require_all) {
  check_keys(j, "network config",
             {"input_dim", "hidden_sizes", "head", "sparsity", "pretrain", "finetune",
              "decision_threshold", "seed"},
             require_all);
  NetworkConfig next = c;
  read(j, "input_dim", next.input_dim, "network config");
  read(j, "hidden_sizes", next.hidden_sizes, "network config");
  if (j.contains("head")) {
    std::string head;
    read(j, "head", head, "network config");
    next.head = parse_head_type(head);
  }
  if (j.contains("sparsity")) update_from_json(next.sparsity, j.at("sparsity"), require_all);
  if (j.contains("pretrain")) update_from_json(next.pretrain, j.at("pretrain"), require_all);
  if (j.contains("finetune")) update_from_json(next.finetune, j.at("finetune"), require_all);
  read(j, "decision_threshold", next.decision_threshold, "network config");
  read(j, "seed", next.seed, "network config");
  c = next;
}

}  // namespace sae
