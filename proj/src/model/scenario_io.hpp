#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "model/types.hpp"

namespace hrc {

inline constexpr int kScenarioSchemaVersion = 1;

/// Parses and validates a scenario document (JSON). Errors carry the line and
/// column for syntax problems and the field path for schema problems.
Scenario load_scenario(std::string_view document);
Scenario load_scenario_file(const std::filesystem::path& path);

/// Inverse of load_scenario on valid scenarios.
std::string serialize_scenario(const Scenario& scenario);

/// Structural checks: unique ids, resolved references and value ranges.
/// Called by load_scenario; exposed for scenarios built in code.
void validate_scenario(const Scenario& scenario);

/// The reference ventilator scenario shipped with the library.
std::string_view bundled_scenario_text();
Scenario bundled_scenario();

}  // namespace hrc
