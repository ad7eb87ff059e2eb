#include "fairalloc/experiment/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fairalloc/errors.hpp"

namespace fairalloc::experiment {

namespace {

using nlohmann::json;

const std::vector<long> kDefaultHorizons = {1000, 2000, 4000, 8000};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw ConfigParse(where + ": unknown field '" + item.key() + "'");
  }
}

std::vector<double> number_list(const json& v, const std::string& name) {
  if (!v.is_array() || v.empty()) throw ConfigParse("env." + name + " must be a non-empty number array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigParse("env." + name + " must contain numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

market::Environment inline_environment(const json& obj) {
  if (!obj.is_object()) throw ConfigParse("env must be a preset name or an object");
  reject_unknown(obj, {"id", "p", "mu", "C", "b"}, "env");
  for (const char* key : {"p", "mu", "C", "b"}) {
    if (!obj.contains(key)) throw ConfigParse(std::string("env: missing field '") + key + "'");
  }
  const auto p = number_list(obj["p"], "p");
  const auto mu = number_list(obj["mu"], "mu");
  const auto b = number_list(obj["b"], "b");
  const json& rows = obj["C"];
  if (!rows.is_array() || rows.size() != b.size()) {
    throw ConfigParse("env.C must have one row per resource (" + std::to_string(b.size()) + ")");
  }
  Eigen::MatrixXd c(static_cast<Eigen::Index>(b.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto row = number_list(rows[i], "C[" + std::to_string(i) + "]");
    if (row.size() != p.size()) throw ConfigParse("env.C row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < row.size(); ++j) {
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
  }
  std::string id = "custom";
  if (obj.contains("id")) {
    if (!obj["id"].is_string()) throw ConfigParse("env.id must be a string");
    id = obj["id"].get<std::string>();
  }
  try {
    auto dist = market::make_distribution(p, mu, c);
    return market::make_environment(id, std::move(dist),
                                    Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size())),
                                    1);
  } catch (const ConfigParse&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigParse(std::string("env: ") + e.what());
  }
}

market::Environment environment_field(const json& v) {
  if (v.is_string()) {
    try {
      return market::preset(v.get<std::string>(), 1);
    } catch (const UnknownPreset& e) {
      throw ConfigParse(e.what());
    }
  }
  return inline_environment(v);
}

lp::Tolerances tolerance_field(const json& v) {
  if (!v.is_object()) throw ConfigParse("tolerances must be an object");
  lp::Tolerances tol;
  reject_unknown(v, {"feasibility", "implicit_equality", "newton_gradient", "newton_max_iterations",
                     "binding", "reduced_cost", "simplex_max_iterations"},
                 "tolerances");
  auto positive = [&](const char* key, double& out) {
    if (!v.contains(key)) return;
    if (!v[key].is_number() || !(v[key].get<double>() > 0.0)) {
      throw ConfigParse(std::string("tolerances.") + key + " must be a positive number");
    }
    out = v[key].get<double>();
  };
  auto count = [&](const char* key, int& out) {
    if (!v.contains(key)) return;
    if (!v[key].is_number_integer() || v[key].get<long>() < 1) {
      throw ConfigParse(std::string("tolerances.") + key + " must be a positive integer");
    }
    out = v[key].get<int>();
  };
  positive("feasibility", tol.feasibility);
  positive("implicit_equality", tol.implicit_equality);
  positive("newton_gradient", tol.newton_gradient);
  positive("binding", tol.binding);
  positive("reduced_cost", tol.reduced_cost);
  count("newton_max_iterations", tol.newton_max_iterations);
  count("simplex_max_iterations", tol.simplex_max_iterations);
  return tol;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigParse(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw ConfigParse("config must be a JSON object");
  reject_unknown(doc, {"env", "policies", "horizons", "trials", "master_seed", "output_dir", "tolerances",
                       "dump_trajectories"},
                 "config");
  if (!doc.contains("env")) throw ConfigParse("config: missing field 'env'");

  ExperimentConfig cfg;
  cfg.env = environment_field(doc["env"]);

  if (doc.contains("policies")) {
    const json& v = doc["policies"];
    if (!v.is_array() || v.empty()) throw ConfigParse("policies must be a non-empty array");
    for (const auto& name : v) {
      if (!name.is_string()) throw ConfigParse("policies must contain strings");
      policy::PolicyKind kind;
      try {
        kind = policy::parse_policy_kind(name.get<std::string>());
      } catch (const InputError& e) {
        throw ConfigParse(e.what());
      }
      if (std::find(cfg.policies.begin(), cfg.policies.end(), kind) != cfg.policies.end()) {
        throw ConfigParse("policies: duplicate '" + name.get<std::string>() + "'");
      }
      cfg.policies.push_back(kind);
    }
  } else {
    cfg.policies = policy::all_policy_kinds();
  }

  if (doc.contains("horizons")) {
    const json& v = doc["horizons"];
    if (!v.is_array() || v.empty()) throw ConfigParse("horizons must be a non-empty array");
    for (const auto& h : v) {
      if (!h.is_number_integer() || h.get<long>() < 1) {
        throw ConfigParse("horizons must be positive integers");
      }
      cfg.horizons.push_back(h.get<long>());
    }
    std::sort(cfg.horizons.begin(), cfg.horizons.end());
    if (std::adjacent_find(cfg.horizons.begin(), cfg.horizons.end()) != cfg.horizons.end()) {
      throw ConfigParse("horizons must be distinct");
    }
  } else {
    cfg.horizons = kDefaultHorizons;
  }

  if (doc.contains("trials")) {
    if (!doc["trials"].is_number_integer() || doc["trials"].get<long>() < 1) {
      throw ConfigParse("trials must be an integer >= 1");
    }
    cfg.trials = doc["trials"].get<long>();
  }
  if (doc.contains("master_seed")) {
    const json& v = doc["master_seed"];
    if (v.is_number_unsigned()) {
      cfg.master_seed = v.get<std::uint64_t>();
    } else if (v.is_number_integer() && v.get<long long>() >= 0) {
      cfg.master_seed = static_cast<std::uint64_t>(v.get<long long>());
    } else {
      throw ConfigParse("master_seed must be a non-negative 64-bit integer");
    }
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string() || doc["output_dir"].get<std::string>().empty()) {
      throw ConfigParse("output_dir must be a non-empty string");
    }
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("tolerances")) cfg.tolerances = tolerance_field(doc["tolerances"]);
  if (doc.contains("dump_trajectories")) {
    if (!doc["dump_trajectories"].is_boolean()) throw ConfigParse("dump_trajectories must be a boolean");
    cfg.dump_trajectories = doc["dump_trajectories"].get<bool>();
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

market::Environment resolve_environment(const std::string& preset_or_path) {
  const auto& names = market::preset_names();
  if (std::find(names.begin(), names.end(), preset_or_path) != names.end()) {
    return market::preset(preset_or_path, 1);
  }
  if (!std::filesystem::exists(preset_or_path)) {
    throw UnknownPreset("'" + preset_or_path + "' is neither a preset nor a readable file");
  }
  const json doc = parse_json(read_file(preset_or_path));
  if (doc.is_object() && doc.contains("env")) return environment_field(doc["env"]);
  return environment_field(doc);
}

}  // namespace fairalloc::experiment
