#pragma once

#include <map>
#include <string>
#include <vector>

#include "irsoff/scenario.hpp"

namespace irsoff {

// Flat view of an INI-style file: "[section]" headers, "key = value" lines,
// '#' and ';' comments. Keys are returned as "section.key".
std::map<std::string, std::string> parse_ini(const std::string& text);
std::map<std::string, std::string> parse_ini_file(const std::string& path);

// Applies one "section.key=value" entry onto a config. Decibel-valued keys
// (rician_factor_db, pathloss_ref_db, tx_power_dbm, noise_dbm_per_hz) are
// converted to linear units here; their linear twins (rician_factor,
// pathloss_ref, tx_power_w, noise_density_w_per_hz) are what dump_config
// emits, so a dump re-applies cleanly. Throws std::invalid_argument for
// unknown keys or unparsable values.
void apply_entry(ScenarioConfig& cfg, const std::string& key, const std::string& value);

// Parses a config file and validates the result.
ScenarioConfig load_config(const std::string& path);

// Applies CLI overrides of the form "section.key=value" (re-validates after).
ScenarioConfig apply_overrides(ScenarioConfig cfg, const std::vector<std::string>& entries);

// Canonical "section.key = value" dump of every addressable field, in a
// fixed order. Used for the manifest hash and for reproducing runs.
std::string dump_config(const ScenarioConfig& cfg);

}  // namespace irsoff
