#pragma once

#include <filesystem>
#include <string>

#include "navsim/sim.hpp"

namespace navsim {

/// Parses a YAML scenario document. Angles are given in degrees. Throws
/// ScenarioError carrying the 1-based line of the offending node.
Scenario parse_scenario(const std::string& text);

/// Reads and parses a scenario file.
Scenario load_scenario(const std::filesystem::path& path);

/// Serializes a scenario so that parse_scenario reproduces it exactly.
std::string dump_scenario(const Scenario& sc);

bool operator==(const Scenario& a, const Scenario& b);

}  // namespace navsim
