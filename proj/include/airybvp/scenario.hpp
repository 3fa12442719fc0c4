#pragma once

#include <filesystem>
#include <iosfwd>

#include "airybvp/config.hpp"

namespace airy {

/// Ordered key: value pairs written to summary.txt.
using Summary = std::vector<std::pair<std::string, std::string>>;

/// Runs one scenario and writes field_u/v/w.csv, coefficients.csv,
/// decay_report.csv, jumps.csv and summary.txt into out_dir.
Summary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

/// Loads, validates and runs a config file.
Summary run_scenario_file(const std::filesystem::path& config, const std::filesystem::path& out_dir);

/// Human-readable catalog of families, keys and datum kinds.
void list_scenarios(std::ostream& out);

}  // namespace airy
