#pragma once

#include "ballconfig/geometry.hpp"
#include "ballconfig/homotopy.hpp"
#include "ballconfig/obstruction.hpp"
#include "ballconfig/sections.hpp"
#include "ballconfig/solver.hpp"

#include <json.hpp>

#include <string>

namespace ballconfig {

// Configuration text format: { "dim": m, "points": [[x1, ..., xm], ...] }.
// Numbers round-trip at full double precision. Unknown keys are ignored.
nlohmann::json config_to_json(const Configuration& c);
Configuration config_from_json(const nlohmann::json& j);

Configuration load_configuration(const std::string& path);

nlohmann::json report_to_json(const SectionCheckReport& rep);
nlohmann::json trace_to_json(const HomotopyTrace& trace);
nlohmann::json report_to_json(const ObstructionReport& rep);
nlohmann::json result_to_json(const FixedSearchResult& result);

}  // namespace ballconfig
