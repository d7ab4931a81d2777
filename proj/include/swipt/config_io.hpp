#pragma once

// JSON configuration. Keys mirror SystemConfig field names; solver settings
// live under "solver". Unknown keys are rejected.
//
//   {
//     "k": 2, "k1": 1, "m": 4,
//     "p_max": 0.05, "noise_power": 1e-6, "path_loss": 1e-3,
//     "alpha": [[1, 0.6], [0.6, 1]],      or  "alpha_cross": 0.6
//     "zeta": 1.0,
//     "scheme": "SLER",                   or  ["MEB", "MLB", "SLER"]
//     "tilt_decay": 0.9, "ebar_grid_size": 21, "trials": 100, "seed": 1,
//     "variant": "P1", "select_eh": false, "reselect_per_point": false,
//     "noise_in_energy": false, "eh_phase_rate": true, "parallelism": 1,
//     "solver": { "outer_max_iterations": 50, "dual_method": "bisection", ... }
//   }

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "swipt/config.hpp"

namespace swipt {

/// Starts from the defaults and overrides every key present. Throws
/// ConfigError naming the key on unknown keys, wrong types or invalid values.
SystemConfig parse_config(std::string_view json_text);
SystemConfig load_config(const std::filesystem::path& path);

/// Canonical JSON text of every field (defaults filled in).
std::string dump_config(const SystemConfig& config);

/// FNV-1a hash of the canonical JSON text.
std::uint64_t config_fingerprint(const SystemConfig& config);

}  // namespace swipt
