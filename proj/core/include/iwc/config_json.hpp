#pragma once

#include <iosfwd>
#include <string>

#include "iwc/config.hpp"

namespace iwc {

/// Parses a scenario from JSON text. Absent fields keep their defaults; an
/// all-whitespace document is the full default config. Unknown keys, type
/// mismatches and invariant violations throw std::runtime_error naming the key.
ScenarioConfig parse_scenario_text(const std::string& text);

ScenarioConfig parse_scenario_file(const std::string& path);

/// Full round-trippable JSON document: parse(emit(cfg)) == cfg.
std::string scenario_to_json(const ScenarioConfig& cfg);

}  // namespace iwc
