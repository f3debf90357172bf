#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "xva/engine.hpp"

namespace xva {

class ScenarioParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses and validates a JSON scenario document. Unknown keys are
/// rejected; bps fields are converted to decimals here, once.
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

nlohmann::json breakdown_to_json(const XvaBreakdown& b);
std::string breakdown_to_csv(const XvaBreakdown& b);

}  // namespace xva
