#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "adaptid/sysid.hpp"

namespace adaptid {

/// Parses an experiment config document. Unknown keys at any level, missing
/// required fields and wrongly typed values raise ConfigError naming the key.
///
/// {
///   "method": "lms_fir" | "lms_iir" | "lms_ga" | "ga",
///   "plant":  {"b": [...], "a": [...]},
///   "input":  {"kind": "four_level", "colored": false, "lpf": "standard8" | [taps...],
///              "samples": 10000, "noise_std": 0},
///   "mu": 0.045,
///   "orders": {"N": 4} | {"M": 0, "L": 1},
///   "seed": 1,
///   "lms_ga": {"m": 5, "D": 0.02, "gamma": 8, "gt": 0.5 | "auto", "t_e": 8},
///   "ga": {"population": 40, "generations": 200, ...},
///   "run": {"max_iterations": 10000, "threshold_db": -140, "hold": 8, "mse_window": 8},
///   "initial": [...]
/// }
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);

/// Reads and parses a config file. `seed_override` (from ADAPTID_SEED) replaces the seed.
ExperimentConfig load_experiment_config(const std::filesystem::path& path,
                                        std::optional<std::uint64_t> seed_override = std::nullopt);

/// Canonical, fully populated form of a config; parses back to the same config.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Value of ADAPTID_SEED, if set. Throws ConfigError if it is not an unsigned integer.
std::optional<std::uint64_t> seed_from_environment();

} // namespace adaptid
