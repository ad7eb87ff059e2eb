#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairalloc/lp/types.hpp"
#include "fairalloc/market/environment.hpp"
#include "fairalloc/policy/policy.hpp"

namespace fairalloc::experiment {

/// One JSON document:
///
///   {
///     "env": "E51"  |  {"id": "mine", "p": [...], "mu": [...], "C": [[...], ...], "b": [...]},
///     "policies": ["adaptive_fair", ...],
///     "horizons": [1000, 2000],
///     "trials": 30,
///     "master_seed": 7,
///     "output_dir": "out",
///     "tolerances": {"binding": 1e-7, ...},
///     "dump_trajectories": false
///   }
///
/// Inline C is m x n: row i lists resource i's consumption by every type.
/// Every field but "env" has a default. Unknown keys are rejected.
struct ExperimentConfig {
  market::Environment env;  // horizon is set per cell
  std::vector<policy::PolicyKind> policies;
  std::vector<long> horizons;
  long trials = 30;
  std::uint64_t master_seed = 1;
  std::string output_dir = "results";
  lp::Tolerances tolerances;
  bool dump_trajectories = false;
};

/// Throws ConfigParse on malformed or invalid documents.
ExperimentConfig parse_config(const std::string& json_text);
/// Throws IoError if the file cannot be read, ConfigParse otherwise.
ExperimentConfig load_config(const std::string& path);

/// A preset name, or a JSON file holding either an inline env object or a
/// whole config. Throws UnknownPreset, IoError or ConfigParse.
market::Environment resolve_environment(const std::string& preset_or_path);

}  // namespace fairalloc::experiment
