#include "formwdp/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace formwdp {

const char* to_string(SlotKind k) {
    switch (k) {
        case SlotKind::Exclusive: return "exclusive";
        case SlotKind::SharedPrimary: return "shared_primary";
        case SlotKind::SharedSecondary: return "shared_secondary";
        case SlotKind::Dummy: return "dummy";
    }
    return "?";
}

namespace {

// Expected benefit cost of one drug-slot pairing. A drug with no exclusive
// bid is capacity-unproven: it cannot be trusted with the exclusive slot or
// with the majority shared slot, so those pairings carry the worst feasible
// cost T * Z instead of a bid-derived one.
Money pair_cost(const MenuDrug& drug, const PositionSlot& slot, double total_units,
                Money list_price) {
    if (drug.dummy || slot.kind == SlotKind::Dummy) return 0.0;
    const Money forbidden = total_units * list_price;
    const bool proven = drug.bid.pct_off_exclusive.has_value();
    const double slot_units = total_units * slot.expected_share;
    switch (slot.kind) {
        case SlotKind::Exclusive:
            if (!proven) return forbidden;
            return slot_units * list_price * (1.0 - *drug.bid.pct_off_exclusive) -
                   drug.bid.lump_sum_exclusive;
        case SlotKind::SharedPrimary:
            if (!proven) return forbidden;
            [[fallthrough]];
        case SlotKind::SharedSecondary:
            return slot_units * list_price * (1.0 - drug.bid.pct_off_shared) -
                   drug.bid.lump_sum_shared;
        case SlotKind::Dummy:
            break;
    }
    return 0.0;
}

// Kuhn-Munkres with row/column potentials, O(n^3). Index 0 is a sentinel.
std::vector<std::size_t> hungarian(const std::vector<std::vector<Money>>& cost) {
    const std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> row_potential(n + 1, 0.0);
    std::vector<double> col_potential(n + 1, 0.0);
    std::vector<std::size_t> matched_row(n + 1, 0);  // column -> row, 0 = free
    std::vector<std::size_t> parent_col(n + 1, 0);

    for (std::size_t r = 1; r <= n; ++r) {
        matched_row[0] = r;
        std::size_t col = 0;
        std::vector<double> min_reduced(n + 1, inf);
        std::vector<bool> visited(n + 1, false);
        do {
            visited[col] = true;
            const std::size_t row = matched_row[col];
            double delta = inf;
            std::size_t next_col = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (visited[j]) continue;
                const double reduced =
                    cost[row - 1][j - 1] - row_potential[row] - col_potential[j];
                if (reduced < min_reduced[j]) {
                    min_reduced[j] = reduced;
                    parent_col[j] = col;
                }
                if (min_reduced[j] < delta) {
                    delta = min_reduced[j];
                    next_col = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (visited[j]) {
                    row_potential[matched_row[j]] += delta;
                    col_potential[j] -= delta;
                } else {
                    min_reduced[j] -= delta;
                }
            }
            col = next_col;
        } while (matched_row[col] != 0);
        do {
            const std::size_t prev = parent_col[col];
            matched_row[col] = matched_row[prev];
            col = prev;
        } while (col != 0);
    }

    std::vector<std::size_t> slot_of_drug(n, 0);
    for (std::size_t j = 1; j <= n; ++j) slot_of_drug[matched_row[j] - 1] = j - 1;
    return slot_of_drug;
}

// Totals are always summed in drug order so equal assignments compare
// bit-identically across solvers.
Money canonical_total(const std::vector<std::vector<Money>>& cost,
                      const std::vector<std::size_t>& slot_of_drug) {
    Money total = 0.0;
    for (std::size_t i = 0; i < slot_of_drug.size(); ++i) total += cost[i][slot_of_drug[i]];
    return total;
}

}  // namespace

CostMatrix build_cost_matrix(const PositionMenu& menu, double total_units,
                             Money list_price) {
    if (menu.drugs.empty() && menu.slots.empty())
        throw UnbalancedMenu("menu has no drugs and no slots");
    if (!(std::isfinite(total_units) && total_units > 0.0) ||
        !(std::isfinite(list_price) && list_price > 0.0))
        throw DomainError("total units and list price must be positive");

    CostMatrix m;
    m.drugs = menu.drugs;
    m.slots = menu.slots;
    while (m.drugs.size() < m.slots.size())
        m.drugs.push_back(MenuDrug{"dummy-drug-" + std::to_string(m.drugs.size()), DrugBid{}, true});
    while (m.slots.size() < m.drugs.size())
        m.slots.push_back(PositionSlot{SlotKind::Dummy, 0.0});

    double live_share = 0.0;
    bool any_live = false;
    for (const PositionSlot& slot : m.slots) {
        if (slot.kind == SlotKind::Dummy) continue;
        if (!(std::isfinite(slot.expected_share) && slot.expected_share >= 0.0 &&
              slot.expected_share <= 1.0))
            throw UnbalancedMenu("slot expected share must be a fraction in [0, 1]");
        live_share += slot.expected_share;
        any_live = true;
    }
    if (any_live && std::abs(live_share - 1.0) > 1e-9)
        throw UnbalancedMenu("expected shares over non-dummy slots must sum to 1");

    const std::size_t n = m.drugs.size();
    m.cost.assign(n, std::vector<Money>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.cost[i][j] = pair_cost(m.drugs[i], m.slots[j], total_units, list_price);
    return m;
}

Matching solve_min_cost(const CostMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw UnbalancedMenu("empty cost matrix");

    // `witness` always holds one optimal assignment consistent with the
    // prefix fixed so far.
    std::vector<std::size_t> witness = hungarian(m.cost);
    const Money best = canonical_total(m.cost, witness);

    // Canonicalize ties: fix drugs in order to the smallest slot that still
    // admits a completion of the same total.
    std::vector<bool> slot_used(n, false);
    for (std::size_t drug = 0; drug < n; ++drug) {
        for (std::size_t slot = 0; slot < witness[drug]; ++slot) {
            if (slot_used[slot]) continue;
            std::vector<std::size_t> rows;
            std::vector<std::size_t> cols;
            for (std::size_t i = drug + 1; i < n; ++i) rows.push_back(i);
            for (std::size_t j = 0; j < n; ++j)
                if (!slot_used[j] && j != slot) cols.push_back(j);

            std::vector<std::size_t> candidate = witness;
            candidate[drug] = slot;
            if (!rows.empty()) {
                std::vector<std::vector<Money>> sub(rows.size(),
                                                    std::vector<Money>(cols.size()));
                for (std::size_t a = 0; a < rows.size(); ++a)
                    for (std::size_t b = 0; b < cols.size(); ++b)
                        sub[a][b] = m.cost[rows[a]][cols[b]];
                const std::vector<std::size_t> completion = hungarian(sub);
                for (std::size_t a = 0; a < rows.size(); ++a)
                    candidate[rows[a]] = cols[completion[a]];
            }
            if (canonical_total(m.cost, candidate) == best) {
                witness = candidate;
                break;
            }
        }
        slot_used[witness[drug]] = true;
    }
    return Matching{witness, canonical_total(m.cost, witness)};
}

Matching brute_force_min(const CostMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw UnbalancedMenu("empty cost matrix");
    if (n > 9) throw TooLarge("factorial enumeration is capped at 9 drugs");

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> best_perm;
    Money best = std::numeric_limits<double>::infinity();
    do {
        const Money total = canonical_total(m.cost, perm);
        if (total < best) {
            best = total;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Matching{best_perm, best};
}

PositionMenu exclusive_menu(const MarketScenario& s) {
    PositionMenu menu;
    menu.slots = {PositionSlot{SlotKind::Exclusive, 1.0}};
    menu.drugs = {MenuDrug{"incumbent", s.incumbent, false},
                  MenuDrug{"entrant", s.entrant, false}};
    return menu;  // build_cost_matrix pads the dummy slot
}

PositionMenu shared_menu(const MarketScenario& s, Share entrant_share) {
    if (!(entrant_share >= 0.0 && entrant_share <= 1.0))
        throw DomainError("entrant share must lie in [0, 1]");
    PositionMenu menu;
    menu.slots = {PositionSlot{SlotKind::SharedPrimary, 1.0 - entrant_share},
                  PositionSlot{SlotKind::SharedSecondary, entrant_share}};
    menu.drugs = {MenuDrug{"incumbent", s.incumbent, false},
                  MenuDrug{"entrant", s.entrant, false}};
    return menu;
}

std::vector<SweepPoint> sweep_menus(const MarketScenario& s) {
    validate(s);
    const Money exclusive_cost =
        solve_min_cost(build_cost_matrix(exclusive_menu(s), s.total_units, s.list_price))
            .total_cost;
    std::vector<SweepPoint> points;
    const std::vector<Share> grid = share_grid(s.analysis.share_grid_step);
    points.reserve(grid.size());
    for (const Share x : grid) {
        const Money shared_cost =
            solve_min_cost(build_cost_matrix(shared_menu(s, x), s.total_units, s.list_price))
                .total_cost;
        if (shared_cost <= exclusive_cost)
            points.push_back({x, Position::Shared, shared_cost});
        else
            points.push_back({x, Position::Exclusive, exclusive_cost});
    }
    return points;
}

}  // namespace formwdp
