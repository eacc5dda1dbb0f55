#include "formwdp/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace formwdp {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) throw ValidationError(path + "." + item.key(), "unknown field");
    }
}

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double require_number(const json& obj, const std::string& path, const char* key) {
    const json* v = find(obj, key);
    if (!v) throw ValidationError(path + "." + key, "required field is missing");
    if (!v->is_number()) throw ValidationError(path + "." + key, "must be a number");
    return v->get<double>();
}

double optional_number(const json& obj, const std::string& path, const char* key,
                       double fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) throw ValidationError(path + "." + key, "must be a number");
    return v->get<double>();
}

std::optional<std::string> optional_string(const json& obj, const std::string& path,
                                           const char* key) {
    const json* v = find(obj, key);
    if (!v) return std::nullopt;
    if (!v->is_string()) throw ValidationError(path + "." + key, "must be a string");
    return v->get<std::string>();
}

const json& require_object(const json& obj, const std::string& path, const char* key) {
    const json* v = find(obj, key);
    if (!v) throw ValidationError(path.empty() ? key : path + "." + key,
                                  "required object is missing");
    if (!v->is_object())
        throw ValidationError(path.empty() ? key : path + "." + key, "must be an object");
    return *v;
}

SlotKind parse_slot_kind(const std::string& text, const std::string& path) {
    if (text == "exclusive") return SlotKind::Exclusive;
    if (text == "shared_primary") return SlotKind::SharedPrimary;
    if (text == "shared_secondary") return SlotKind::SharedSecondary;
    if (text == "dummy") return SlotKind::Dummy;
    throw ValidationError(path,
                          "must be one of exclusive, shared_primary, shared_secondary, dummy");
}

std::vector<PositionSlot> parse_menu(const json& menu) {
    reject_unknown_keys(menu, "menu", {"slots"});
    const json* slots = find(menu, "slots");
    if (!slots) throw ValidationError("menu.slots", "required field is missing");
    if (!slots->is_array() || slots->empty())
        throw ValidationError("menu.slots", "must be a non-empty array");
    std::vector<PositionSlot> out;
    out.reserve(slots->size());
    std::size_t index = 0;
    double live_share = 0.0;
    bool any_live = false;
    for (const json& slot : *slots) {
        const std::string path = "menu.slots[" + std::to_string(index) + "]";
        if (!slot.is_object()) throw ValidationError(path, "must be an object");
        reject_unknown_keys(slot, path, {"kind", "expected_share"});
        const json* kind = find(slot, "kind");
        if (!kind || !kind->is_string())
            throw ValidationError(path + ".kind", "required string is missing");
        PositionSlot parsed;
        parsed.kind = parse_slot_kind(kind->get<std::string>(), path + ".kind");
        parsed.expected_share = optional_number(slot, path, "expected_share", 0.0);
        if (!(parsed.expected_share >= 0.0 && parsed.expected_share <= 1.0))
            throw ValidationError(path + ".expected_share", "must be a fraction in [0, 1]");
        if (parsed.kind != SlotKind::Dummy) {
            live_share += parsed.expected_share;
            any_live = true;
        } else if (parsed.expected_share != 0.0) {
            throw ValidationError(path + ".expected_share", "dummy slots carry zero share");
        }
        out.push_back(parsed);
        ++index;
    }
    if (any_live && std::abs(live_share - 1.0) > 1e-9)
        throw ValidationError("menu.slots", "expected shares over non-dummy slots must sum to 1");
    return out;
}

}  // namespace

ScenarioFile parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("(document)", "must be a JSON object");
    reject_unknown_keys(doc, "(document)",
                        {"schema_version", "name", "description", "source_note", "market",
                         "incumbent", "entrant", "analysis", "menu"});

    const double version = require_number(doc, "(document)", "schema_version");
    if (version != 1.0) throw ValidationError("schema_version", "must be 1");

    ScenarioFile file;
    file.name = optional_string(doc, "(document)", "name");
    file.description = optional_string(doc, "(document)", "description");
    file.source_note = optional_string(doc, "(document)", "source_note");

    const json& market = require_object(doc, "", "market");
    reject_unknown_keys(market, "market", {"total_units", "list_price"});
    file.scenario.total_units = require_number(market, "market", "total_units");
    file.scenario.list_price = require_number(market, "market", "list_price");

    const json& incumbent = require_object(doc, "", "incumbent");
    reject_unknown_keys(incumbent, "incumbent",
                        {"pct_off_exclusive", "pct_off_shared", "lump_sum_exclusive",
                         "lump_sum_shared"});
    file.scenario.incumbent.pct_off_exclusive =
        require_number(incumbent, "incumbent", "pct_off_exclusive");
    file.scenario.incumbent.pct_off_shared =
        require_number(incumbent, "incumbent", "pct_off_shared");
    file.scenario.incumbent.lump_sum_exclusive =
        optional_number(incumbent, "incumbent", "lump_sum_exclusive", 0.0);
    file.scenario.incumbent.lump_sum_shared =
        optional_number(incumbent, "incumbent", "lump_sum_shared", 0.0);

    const json& entrant = require_object(doc, "", "entrant");
    if (find(entrant, "pct_off_exclusive") || find(entrant, "lump_sum_exclusive"))
        throw ValidationError("entrant.pct_off_exclusive",
                              "exclusive entrant bids are not modeled");
    reject_unknown_keys(entrant, "entrant", {"pct_off_shared", "lump_sum_shared"});
    file.scenario.entrant.pct_off_shared = require_number(entrant, "entrant", "pct_off_shared");
    file.scenario.entrant.lump_sum_shared =
        optional_number(entrant, "entrant", "lump_sum_shared", 0.0);

    if (const json* analysis = find(doc, "analysis")) {
        if (!analysis->is_object()) throw ValidationError("analysis", "must be an object");
        reject_unknown_keys(*analysis, "analysis",
                            {"share_grid_step", "threshold_share", "sustainability_cutoff"});
        AnalysisSettings defaults;
        file.scenario.analysis.share_grid_step =
            optional_number(*analysis, "analysis", "share_grid_step", defaults.share_grid_step);
        file.scenario.analysis.threshold_share =
            optional_number(*analysis, "analysis", "threshold_share", defaults.threshold_share);
        file.scenario.analysis.sustainability_cutoff = optional_number(
            *analysis, "analysis", "sustainability_cutoff", defaults.sustainability_cutoff);
    }

    if (const json* menu = find(doc, "menu")) {
        if (!menu->is_object()) throw ValidationError("menu", "must be an object");
        file.menu_slots = parse_menu(*menu);
    }

    validate(file.scenario);
    return file;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file: " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    if (in.bad()) throw IoError("failed reading scenario file: " + path.string());
    return parse_scenario(text.str());
}

MarketScenario load_scenario(const std::filesystem::path& path) {
    return load_scenario_file(path).scenario;
}

std::string serialize_scenario(const ScenarioFile& file) {
    validate(file.scenario);
    json doc;
    doc["schema_version"] = 1;
    if (file.name) doc["name"] = *file.name;
    if (file.description) doc["description"] = *file.description;
    if (file.source_note) doc["source_note"] = *file.source_note;
    doc["market"] = {{"total_units", file.scenario.total_units},
                     {"list_price", file.scenario.list_price}};
    doc["incumbent"] = {{"pct_off_exclusive", *file.scenario.incumbent.pct_off_exclusive},
                        {"pct_off_shared", file.scenario.incumbent.pct_off_shared},
                        {"lump_sum_exclusive", file.scenario.incumbent.lump_sum_exclusive},
                        {"lump_sum_shared", file.scenario.incumbent.lump_sum_shared}};
    doc["entrant"] = {{"pct_off_shared", file.scenario.entrant.pct_off_shared},
                      {"lump_sum_shared", file.scenario.entrant.lump_sum_shared}};
    doc["analysis"] = {
        {"share_grid_step", file.scenario.analysis.share_grid_step},
        {"threshold_share", file.scenario.analysis.threshold_share},
        {"sustainability_cutoff", file.scenario.analysis.sustainability_cutoff}};
    if (!file.menu_slots.empty()) {
        json slots = json::array();
        for (const PositionSlot& slot : file.menu_slots)
            slots.push_back(
                {{"kind", to_string(slot.kind)}, {"expected_share", slot.expected_share}});
        doc["menu"] = {{"slots", std::move(slots)}};
    }
    return doc.dump(2) + "\n";
}

void write_scenario(const ScenarioFile& file, const std::filesystem::path& path) {
    const std::string text = serialize_scenario(file);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing scenario file: " + path.string());
}

}  // namespace formwdp
