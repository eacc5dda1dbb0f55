#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "formwdp/market_model.hpp"

namespace formwdp {

enum class SlotKind { Exclusive, SharedPrimary, SharedSecondary, Dummy };

const char* to_string(SlotKind k);

/// A formulary slot on offer together with its demand forecast as a
/// fraction of the total market. Forecast shares over non-dummy slots must
/// sum to 1; dummy slots carry zero share.
struct PositionSlot {
    SlotKind kind = SlotKind::Dummy;
    Share expected_share = 0.0;
};

struct MenuDrug {
    std::string id;
    DrugBid bid;
    bool dummy = false;
};

/// Drugs and slots up for assignment. The menu is balanced into a square
/// problem inside build_cost_matrix by appending zero-cost dummy slots or
/// dummy drugs.
struct PositionMenu {
    std::vector<PositionSlot> slots;
    std::vector<MenuDrug> drugs;
};

/// Square cost matrix: cost[i][j] is the expected benefit cost of placing
/// drug i in slot j, T * share_j * Z * (1 - b_ij) - LS_ij. Rows and columns
/// involving a dummy are all zero. Ineligible pairings carry the worst
/// feasible cost, T * Z.
struct CostMatrix {
    std::vector<std::vector<Money>> cost;
    std::vector<MenuDrug> drugs;     // after balancing
    std::vector<PositionSlot> slots; // after balancing

    std::size_t size() const { return cost.size(); }
};

CostMatrix build_cost_matrix(const PositionMenu& menu, double total_units,
                             Money list_price);

/// A drug -> slot bijection and its total expected benefit cost.
struct Matching {
    std::vector<std::size_t> slot_of_drug;
    Money total_cost = 0.0;
};

/// Exact minimum-cost assignment via the Hungarian method; cost ties are
/// broken by the lexicographically smallest slot_of_drug vector.
Matching solve_min_cost(const CostMatrix& m);

/// Factorial-enumeration oracle with the same tie-breaking. Guarded to
/// n <= 9.
Matching brute_force_min(const CostMatrix& m);

/// The canonical two-drug menus: an exclusive slot that the incumbent
/// pairs with a dummy, and a primary/secondary shared split.
PositionMenu exclusive_menu(const MarketScenario& s);
PositionMenu shared_menu(const MarketScenario& s, Share entrant_share);

struct SweepPoint {
    Share x = 0.0;
    Position chosen = Position::Exclusive;
    Money cost = 0.0;
};

/// Solves the exclusive-with-dummy and shared menus at every grid share
/// and keeps the cheaper structure (ties go to Shared).
std::vector<SweepPoint> sweep_menus(const MarketScenario& s);

}  // namespace formwdp
