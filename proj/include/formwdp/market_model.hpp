#pragma once

#include <optional>
#include <vector>

#include "formwdp/errors.hpp"

namespace formwdp {

using Money = double;  // dollars
using Share = double;  // dimensionless fraction

/// One competitor's bid sheet: percent-off-list unit rebate bids per
/// position plus optional lump-sum rebates. Percent-off values are stored
/// as fractions in [0, 1]. A drug with no exclusive bid cannot be offered
/// an exclusive position.
struct DrugBid {
    std::optional<Share> pct_off_exclusive;
    Share pct_off_shared = 0.0;
    Money lump_sum_exclusive = 0.0;
    Money lump_sum_shared = 0.0;
};

/// Knobs for grid sweeps and the lump-sum exclusion test.
struct AnalysisSettings {
    Share share_grid_step = 0.01;        // (0, 0.5]
    Share threshold_share = 0.20;        // (0, 1): entrant performance standard
    Share sustainability_cutoff = 0.80;  // (0, 2]: deeper effective discounts are unsustainable
};

/// A two-competitor market: an incumbent bidding for exclusive and shared
/// positions and an entrant bidding for the shared position only. An
/// entrant that loses the shared slot is relegated to a dummy position
/// with no cost impact.
struct MarketScenario {
    double total_units = 0.0;  // prescription units per period
    Money list_price = 0.0;    // per unit
    DrugBid incumbent;
    DrugBid entrant;
    AnalysisSettings analysis;
};

/// Checks every scenario invariant; throws ValidationError naming the field.
void validate(const MarketScenario& s);

enum class Position { Exclusive, Shared };

const char* to_string(Position p);

/// One grid point of the cost curve. With equal list prices, cost plus
/// gross rebates reconstructs total_units * list_price for either position.
struct CostLine {
    Share x = 0.0;
    Money tebc_exclusive = 0.0;
    Money tebc_shared = 0.0;
    Money gross_rebates_exclusive = 0.0;
    Money gross_rebates_shared = 0.0;
};

/// Result of decide_assignment: the cheaper position at the given share
/// estimate together with the numbers behind the call.
struct AssignmentOutcome {
    Position chosen = Position::Exclusive;
    Share x = 0.0;
    Money tebc_exclusive = 0.0;
    Money tebc_shared = 0.0;  // at x
    std::optional<Share> breakeven;  // share equalizing the two costs, when one exists in [0, 1]
};

/// Total expected benefit cost of an exclusive assignment:
/// T * Z * (1 - b1) - LS1.
Money tebc_exclusive(const MarketScenario& s);

/// Total expected benefit cost of a shared assignment at entrant share x:
/// T * Z * (1 - b2) * (1 - x) + T * Z * (1 - b3) * x - LS2 - LS3.
Money tebc_shared(const MarketScenario& s, Share x);

/// Gross rebates received under a position at entrant share x: unit
/// rebates plus lump sums. x is irrelevant for the exclusive position.
Money gross_rebates(const MarketScenario& s, Position position, Share x);

/// Entrant share at which shared and exclusive costs are equal in the
/// percent-off-bids-only case: (b1 - b2) / (b3 - b2). Values above 1 mean
/// a shared assignment can never break even; they are returned unclamped.
Share breakeven_share(Share b1, Share b2, Share b3);

/// Unit-denominated break-even: units the entrant must fill so that a
/// shared assignment costs the same as an exclusive one at the given
/// per-unit rates. Equals breakeven_share applied to rates, scaled by
/// total_units.
double breakeven_units(double total_units, Money rate_exclusive,
                       Money rate_incumbent_shared, Money rate_entrant_shared);

/// Grid {0, step, 2*step, ..., 1}.
std::vector<Share> share_grid(Share step);

/// Both positions' costs and rebates at every grid share.
std::vector<CostLine> cost_curve(const MarketScenario& s);

/// Dollar reduction of the shared cost per percentage point of entrant
/// share: T * Z * (b3 - b2) * 0.01.
Money slope_per_point(const MarketScenario& s);

/// cell[i][j] = biddown_spreads[j] / entrant_spreads[i]: the entrant share
/// required to equalize costs for each (incumbent bid-down, entrant spread)
/// pair. Cells above 1 mean equalization is unreachable.
std::vector<std::vector<Share>> equalizing_share_array(
    const std::vector<Share>& biddown_spreads,
    const std::vector<Share>& entrant_spreads);

/// Picks Shared when its expected cost is less than or equal to the
/// certain exclusive cost at the share estimate x_hat.
AssignmentOutcome decide_assignment(const MarketScenario& s, Share x_hat);

/// Share where the shared cost line meets the exclusive one, lump sums
/// included; nullopt when the lines do not cross inside [0, 1]. For a
/// scenario without lump sums this equals breakeven_share.
std::optional<Share> crossover_share(const MarketScenario& s);

}  // namespace formwdp
