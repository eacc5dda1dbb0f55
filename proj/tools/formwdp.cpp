#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "formwdp/assignment.hpp"
#include "formwdp/lumpsum.hpp"
#include "formwdp/market_model.hpp"
#include "formwdp/report.hpp"
#include "formwdp/rounding.hpp"
#include "formwdp/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace formwdp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;      // NoBreakeven, TooLarge, and kin
constexpr int kExitValidation = 2;  // bad scenario or bad arguments
constexpr int kExitIo = 3;

struct Options {
    std::string scenario_path;
    std::string out_dir = ".";
    std::string format = "text";
};

ScenarioFile load(const Options& opt) {
    if (opt.scenario_path.empty())
        throw ValidationError("--scenario", "a scenario file is required");
    ScenarioFile file = load_scenario_file(opt.scenario_path);
    if (const char* step_text = std::getenv("FORMWDP_GRID_STEP")) {
        char* end = nullptr;
        const double step = std::strtod(step_text, &end);
        if (end == step_text || *end != '\0' || !(step > 0.0 && step <= 0.5))
            throw ValidationError("FORMWDP_GRID_STEP",
                                  "must be a grid step in (0, 0.5]");
        file.scenario.analysis.share_grid_step = step;
    }
    return file;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path.string());
    return out;
}

void finish_out(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("failed writing file: " + path.string());
    std::cout << "wrote " << path.string() << '\n';
}

std::vector<int> parse_range(const std::string& text, const std::string& flag) {
    // lo:hi[:step], all integer percentage points
    int lo = 0;
    int hi = 0;
    int step = 1;
    const int fields = std::sscanf(text.c_str(), "%d:%d:%d", &lo, &hi, &step);
    if (fields < 2 || step <= 0 || hi < lo)
        throw ValidationError(flag, "expected lo:hi[:step] in percentage points");
    std::vector<int> values;
    for (int v = lo; v <= hi; v += step) values.push_back(v);
    return values;
}

int run_breakeven(const Options& opt) {
    const MarketScenario s = load(opt).scenario;
    const Share b1 = *s.incumbent.pct_off_exclusive;
    const Share b2 = s.incumbent.pct_off_shared;
    const Share b3 = s.entrant.pct_off_shared;
    const Share breakeven = breakeven_share(b1, b2, b3);

    char raw[32];
    std::snprintf(raw, sizeof(raw), "%.6f", breakeven);
    std::cout << "break-even entrant share: " << report::format_percent(breakeven) << " (raw "
              << raw << ")\n";
    if (breakeven > 1.0)
        std::cout << "note: break-even exceeds 100% share; a shared assignment cannot reach "
                     "the exclusive cost\n";

    char slope[32];
    std::snprintf(slope, sizeof(slope), "%.2f", slope_per_point(s) / 1e6);
    std::cout << "shared-cost slope: $" << slope << "M per share point\n";
    std::cout << "tebc exclusive (certain): " << report::format_millions(tebc_exclusive(s))
              << '\n';
    std::cout << "tebc shared at x=0: " << report::format_millions(tebc_shared(s, 0.0))
              << '\n';
    if (s.incumbent.lump_sum_shared > 0.0 || s.entrant.lump_sum_shared > 0.0 ||
        s.incumbent.lump_sum_exclusive > 0.0) {
        std::cout << "note: bids carry lump sums; the percent-bid break-even above ignores "
                     "them";
        if (const auto crossing = crossover_share(s))
            std::cout << " (cost curves cross at " << report::format_percent(*crossing) << ")";
        std::cout << '\n';
    }
    return kExitOk;
}

int run_curve(const Options& opt) {
    const MarketScenario s = load(opt).scenario;
    const std::vector<CostLine> lines = cost_curve(s);
    const std::optional<Share> crossing = crossover_share(s);

    { std::error_code ec; fs::create_directories(opt.out_dir, ec); }
    const fs::path csv_path = fs::path(opt.out_dir) / "cost_curve.csv";
    auto csv = open_out(csv_path);
    report::write_curve_csv(lines, csv);
    finish_out(csv, csv_path);

    const fs::path svg_path = fs::path(opt.out_dir) / "cost_curve.svg";
    auto svg = open_out(svg_path);
    report::write_curve_svg(lines, crossing, svg);
    finish_out(svg, svg_path);
    return kExitOk;
}

int run_equalize(const Options& opt, const std::string& biddown, const std::string& spread) {
    const std::vector<int> biddown_pp = parse_range(biddown, "--biddown");
    const std::vector<int> spread_pp = parse_range(spread, "--spread");
    if (opt.format == "csv") {
        { std::error_code ec; fs::create_directories(opt.out_dir, ec); }
        const fs::path path = fs::path(opt.out_dir) / "equalize.csv";
        auto out = open_out(path);
        report::write_equalize_csv(biddown_pp, spread_pp, out);
        finish_out(out, path);
    } else {
        std::cout << report::render_equalize_text(biddown_pp, spread_pp);
    }
    return kExitOk;
}

int run_exclusion(const Options& opt) {
    const MarketScenario s = load(opt).scenario;
    std::cout << report::render_net_price_text(s, report::net_price_shares()) << '\n';

    const ExclusionVerdict verdict = exclusion_test(s);
    const std::string pct_at =
        report::format_percent(verdict.entrant_pct_off_at_threshold);
    const std::string cutoff = report::format_percent(verdict.cutoff);
    if (verdict.exclusionary) {
        std::cout << "EXCLUSIONARY at " << report::format_percent(verdict.threshold_share)
                  << " threshold (" << pct_at << " off list > " << cutoff << " cutoff)\n";
    } else {
        std::cout << "not exclusionary (" << pct_at << " <= " << cutoff << ")\n";
    }
    if (verdict.sustainable_share) {
        std::cout << "entrant margins reach the " << cutoff << " cutoff from "
                  << report::format_percent(*verdict.sustainable_share) << " share\n";
    } else {
        std::cout << "entrant margins never reach the " << cutoff
                  << " cutoff on the share grid\n";
    }
    return kExitOk;
}

int run_solve(const Options& opt, std::optional<double> share, bool oracle) {
    const ScenarioFile file = load(opt);
    if (file.menu_slots.empty())
        throw ValidationError("menu", "scenario carries no position menu");
    const MarketScenario& s = file.scenario;

    PositionMenu shared;
    shared.slots = file.menu_slots;
    shared.drugs = {MenuDrug{"incumbent", s.incumbent, false},
                    MenuDrug{"entrant", s.entrant, false}};
    if (share) {
        if (!(*share >= 0.0 && *share <= 1.0))
            throw ValidationError("--share", "must be a fraction in [0, 1]");
        std::size_t primaries = 0;
        std::size_t secondaries = 0;
        for (const PositionSlot& slot : shared.slots) {
            if (slot.kind == SlotKind::SharedPrimary) ++primaries;
            if (slot.kind == SlotKind::SharedSecondary) ++secondaries;
        }
        if (primaries != 1 || secondaries != 1)
            throw ValidationError(
                "--share", "share override needs exactly one shared_primary and one "
                           "shared_secondary slot");
        for (PositionSlot& slot : shared.slots) {
            if (slot.kind == SlotKind::SharedPrimary) slot.expected_share = 1.0 - *share;
            if (slot.kind == SlotKind::SharedSecondary) slot.expected_share = *share;
        }
    }

    const auto solve = [oracle](const CostMatrix& m) {
        return oracle ? brute_force_min(m) : solve_min_cost(m);
    };
    const CostMatrix shared_matrix = build_cost_matrix(shared, s.total_units, s.list_price);
    const Matching shared_match = solve(shared_matrix);
    const CostMatrix exclusive_matrix =
        build_cost_matrix(exclusive_menu(s), s.total_units, s.list_price);
    const Matching exclusive_match = solve(exclusive_matrix);

    const bool pick_shared = shared_match.total_cost <= exclusive_match.total_cost;
    const CostMatrix& matrix = pick_shared ? shared_matrix : exclusive_matrix;
    const Matching& match = pick_shared ? shared_match : exclusive_match;

    char raw[40];
    std::snprintf(raw, sizeof(raw), "%.2f", match.total_cost);
    std::cout << "chosen structure: " << (pick_shared ? "shared" : "exclusive") << '\n';
    std::cout << "total expected benefit cost: " << report::format_millions(match.total_cost)
              << " (raw " << raw << ")\n";
    for (std::size_t i = 0; i < match.slot_of_drug.size(); ++i) {
        const MenuDrug& drug = matrix.drugs[i];
        const PositionSlot& slot = matrix.slots[match.slot_of_drug[i]];
        std::cout << "  " << drug.id << " -> " << to_string(slot.kind) << " (expected share "
                  << report::format_percent(slot.expected_share) << "): "
                  << report::format_millions(matrix.cost[i][match.slot_of_drug[i]]) << '\n';
    }
    std::cout << "alternative (" << (pick_shared ? "exclusive" : "shared")
              << "): " << report::format_millions(
                     pick_shared ? exclusive_match.total_cost : shared_match.total_cost)
              << '\n';
    return kExitOk;
}

int run_tables(const Options& opt) {
    const MarketScenario s = load(opt).scenario;
    { std::error_code ec; fs::create_directories(opt.out_dir, ec); }

    const fs::path net_path = fs::path(opt.out_dir) / "net_prices.csv";
    auto net = open_out(net_path);
    report::write_net_price_csv(s, report::net_price_shares(), net);
    finish_out(net, net_path);

    const fs::path cost_path = fs::path(opt.out_dir) / "benefit_costs.csv";
    auto cost = open_out(cost_path);
    report::write_benefit_cost_csv(s, report::benefit_cost_shares(), cost);
    finish_out(cost, cost_path);

    const fs::path rebate_path = fs::path(opt.out_dir) / "gross_rebates.csv";
    auto rebates = open_out(rebate_path);
    report::write_gross_rebates_csv(s, report::benefit_cost_shares(), rebates);
    finish_out(rebates, rebate_path);

    const fs::path menu_path = fs::path(opt.out_dir) / "rebate_menu.csv";
    auto menu = open_out(menu_path);
    report::write_rebate_menu_csv(s, menu);
    finish_out(menu, menu_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Formulary position assignment and rebate analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("-s,--scenario", opt.scenario_path, "Scenario JSON file");
    app.add_option("--out", opt.out_dir, "Output directory for generated files");
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "csv"}));

    CLI::App* breakeven =
        app.add_subcommand("breakeven", "Break-even entrant share and cost intercepts");
    CLI::App* curve =
        app.add_subcommand("curve", "Cost curve CSV and SVG chart across entrant shares");
    CLI::App* equalize =
        app.add_subcommand("equalize", "Equalizing-share array over bid spreads");
    std::string biddown = "3:10:1";
    std::string spread = "20:55:5";
    equalize->add_option("--biddown", biddown,
                         "Incumbent bid-down range, pp (lo:hi[:step])");
    equalize->add_option("--spread", spread, "Entrant spread range, pp (lo:hi[:step])");
    CLI::App* exclusion =
        app.add_subcommand("exclusion", "Price-cost test for exclusionary lump sums");
    CLI::App* solve = app.add_subcommand("solve", "Winner determination over the menu");
    double share_value = -1.0;
    CLI::Option* share_opt =
        solve->add_option("--share", share_value, "Entrant share override");
    bool oracle = false;
    solve->add_flag("--oracle", oracle, "Use the enumeration oracle instead of the solver");
    CLI::App* tables = app.add_subcommand("tables", "Reference tables as CSV files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (breakeven->parsed()) return run_breakeven(opt);
        if (curve->parsed()) return run_curve(opt);
        if (equalize->parsed()) return run_equalize(opt, biddown, spread);
        if (exclusion->parsed()) return run_exclusion(opt);
        if (solve->parsed())
            return run_solve(opt,
                             share_opt->count() ? std::optional<double>(share_value)
                                                : std::nullopt,
                             oracle);
        if (tables->parsed()) return run_tables(opt);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitValidation;
}
