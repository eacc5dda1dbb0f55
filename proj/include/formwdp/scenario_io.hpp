#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "formwdp/assignment.hpp"
#include "formwdp/market_model.hpp"

namespace formwdp {

/// A scenario document: the market itself plus optional metadata and an
/// optional solver menu. The JSON layout is documented in the README.
struct ScenarioFile {
    MarketScenario scenario;
    std::vector<PositionSlot> menu_slots;  // empty unless the file carries a menu
    std::optional<std::string> name;
    std::optional<std::string> description;
    std::optional<std::string> source_note;
};

/// Parses and fully validates a scenario document. Unknown fields are
/// rejected; absent analysis settings and lump sums receive defaults.
/// Throws ParseError for malformed JSON and ValidationError (with the
/// field path) for constraint violations.
ScenarioFile parse_scenario(const std::string& json_text);

ScenarioFile load_scenario_file(const std::filesystem::path& path);

/// Convenience wrapper returning just the market.
MarketScenario load_scenario(const std::filesystem::path& path);

std::string serialize_scenario(const ScenarioFile& file);

/// Writes the document so that loading it back reproduces `file` exactly.
void write_scenario(const ScenarioFile& file, const std::filesystem::path& path);

}  // namespace formwdp
