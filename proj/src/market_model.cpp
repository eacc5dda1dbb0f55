#include "formwdp/market_model.hpp"

#include <cmath>

namespace formwdp {

namespace {

bool is_fraction(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

void require(bool ok, const char* field, const char* constraint) {
    if (!ok) throw ValidationError(field, constraint);
}

}  // namespace

void validate(const MarketScenario& s) {
    require(std::isfinite(s.total_units) && s.total_units > 0.0,
            "market.total_units", "must be a positive number of units");
    require(std::isfinite(s.list_price) && s.list_price > 0.0,
            "market.list_price", "must be a positive price");

    require(s.incumbent.pct_off_exclusive.has_value(),
            "incumbent.pct_off_exclusive", "incumbent must bid for the exclusive position");
    require(is_fraction(*s.incumbent.pct_off_exclusive),
            "incumbent.pct_off_exclusive", "must be a fraction in [0, 1]");
    require(is_fraction(s.incumbent.pct_off_shared),
            "incumbent.pct_off_shared", "must be a fraction in [0, 1]");
    require(std::isfinite(s.incumbent.lump_sum_exclusive) && s.incumbent.lump_sum_exclusive >= 0.0,
            "incumbent.lump_sum_exclusive", "must be >= 0");
    require(std::isfinite(s.incumbent.lump_sum_shared) && s.incumbent.lump_sum_shared >= 0.0,
            "incumbent.lump_sum_shared", "must be >= 0");

    require(!s.entrant.pct_off_exclusive.has_value(),
            "entrant.pct_off_exclusive",
            "exclusive entrant bids are not modeled; an entrant losing the shared slot is a dummy");
    require(is_fraction(s.entrant.pct_off_shared),
            "entrant.pct_off_shared", "must be a fraction in [0, 1]");
    require(s.entrant.lump_sum_exclusive == 0.0,
            "entrant.lump_sum_exclusive", "entrant holds no exclusive position");
    require(std::isfinite(s.entrant.lump_sum_shared) && s.entrant.lump_sum_shared >= 0.0,
            "entrant.lump_sum_shared", "must be >= 0");

    const AnalysisSettings& a = s.analysis;
    require(std::isfinite(a.share_grid_step) && a.share_grid_step > 0.0 && a.share_grid_step <= 0.5,
            "analysis.share_grid_step", "must lie in (0, 0.5]");
    require(std::isfinite(a.threshold_share) && a.threshold_share > 0.0 && a.threshold_share < 1.0,
            "analysis.threshold_share", "must lie in (0, 1)");
    require(std::isfinite(a.sustainability_cutoff) && a.sustainability_cutoff > 0.0 &&
                a.sustainability_cutoff <= 2.0,
            "analysis.sustainability_cutoff", "must lie in (0, 2]");
}

const char* to_string(Position p) {
    return p == Position::Exclusive ? "exclusive" : "shared";
}

Money tebc_exclusive(const MarketScenario& s) {
    if (!s.incumbent.pct_off_exclusive)
        throw MissingBid("incumbent has no exclusive bid");
    const double tz = s.total_units * s.list_price;
    return tz * (1.0 - *s.incumbent.pct_off_exclusive) - s.incumbent.lump_sum_exclusive;
}

Money tebc_shared(const MarketScenario& s, Share x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("entrant share must lie in [0, 1]");
    const double tz = s.total_units * s.list_price;
    return tz * (1.0 - s.incumbent.pct_off_shared) * (1.0 - x) +
           tz * (1.0 - s.entrant.pct_off_shared) * x -
           s.incumbent.lump_sum_shared - s.entrant.lump_sum_shared;
}

Money gross_rebates(const MarketScenario& s, Position position, Share x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("entrant share must lie in [0, 1]");
    const double tz = s.total_units * s.list_price;
    if (position == Position::Exclusive) {
        if (!s.incumbent.pct_off_exclusive)
            throw MissingBid("incumbent has no exclusive bid");
        return tz * *s.incumbent.pct_off_exclusive + s.incumbent.lump_sum_exclusive;
    }
    return tz * (s.incumbent.pct_off_shared * (1.0 - x) + s.entrant.pct_off_shared * x) +
           s.incumbent.lump_sum_shared + s.entrant.lump_sum_shared;
}

Share breakeven_share(Share b1, Share b2, Share b3) {
    if (!(is_fraction(b1) && is_fraction(b2) && is_fraction(b3)))
        throw DomainError("bids must be fractions in [0, 1]");
    if (b3 <= b2)
        throw NoBreakeven("entrant does not outbid incumbent for the shared position (b3 <= b2)");
    if (b1 < b2)
        throw DomainError("incumbent bid-down spread must be nonnegative (b1 >= b2)");
    return (b1 - b2) / (b3 - b2);
}

double breakeven_units(double total_units, Money rate_exclusive,
                       Money rate_incumbent_shared, Money rate_entrant_shared) {
    if (!(std::isfinite(total_units) && total_units > 0.0))
        throw DomainError("total units must be positive");
    const double spread = rate_incumbent_shared - rate_entrant_shared;
    if (spread <= 0.0)
        throw NoBreakeven(
            "no break-even: the incumbent's shared rate must exceed the entrant's");
    if (rate_exclusive > rate_incumbent_shared)
        throw DomainError("exclusive rate must not exceed the incumbent's shared rate");
    return total_units * (rate_incumbent_shared - rate_exclusive) / spread;
}

std::vector<Share> share_grid(Share step) {
    if (!(std::isfinite(step) && step > 0.0 && step <= 0.5))
        throw DomainError("grid step must lie in (0, 0.5]");
    std::vector<Share> grid;
    for (int k = 0;; ++k) {
        const double x = k * step;
        if (x >= 1.0 - 1e-12) break;
        grid.push_back(x);
    }
    grid.push_back(1.0);
    return grid;
}

std::vector<CostLine> cost_curve(const MarketScenario& s) {
    validate(s);
    const Money exclusive_cost = tebc_exclusive(s);
    const Money exclusive_rebates = gross_rebates(s, Position::Exclusive, 0.0);
    std::vector<CostLine> lines;
    const std::vector<Share> grid = share_grid(s.analysis.share_grid_step);
    lines.reserve(grid.size());
    for (const Share x : grid) {
        CostLine line;
        line.x = x;
        line.tebc_exclusive = exclusive_cost;
        line.tebc_shared = tebc_shared(s, x);
        line.gross_rebates_exclusive = exclusive_rebates;
        line.gross_rebates_shared = gross_rebates(s, Position::Shared, x);
        lines.push_back(line);
    }
    return lines;
}

Money slope_per_point(const MarketScenario& s) {
    validate(s);
    return s.total_units * s.list_price *
           (s.entrant.pct_off_shared - s.incumbent.pct_off_shared) * 0.01;
}

std::vector<std::vector<Share>> equalizing_share_array(
    const std::vector<Share>& biddown_spreads, const std::vector<Share>& entrant_spreads) {
    std::vector<std::vector<Share>> cells;
    cells.reserve(entrant_spreads.size());
    for (const Share spread : entrant_spreads) {
        if (!(spread > 0.0))
            throw NoBreakeven("entrant shared-bid spread must be positive");
        std::vector<Share> row;
        row.reserve(biddown_spreads.size());
        for (const Share biddown : biddown_spreads) row.push_back(biddown / spread);
        cells.push_back(std::move(row));
    }
    return cells;
}

AssignmentOutcome decide_assignment(const MarketScenario& s, Share x_hat) {
    validate(s);
    if (!(x_hat >= 0.0 && x_hat <= 1.0))
        throw DomainError("share estimate must lie in [0, 1]");
    AssignmentOutcome out;
    out.x = x_hat;
    out.tebc_exclusive = tebc_exclusive(s);
    out.tebc_shared = tebc_shared(s, x_hat);
    out.chosen =
        out.tebc_shared <= out.tebc_exclusive ? Position::Shared : Position::Exclusive;
    out.breakeven = crossover_share(s);
    return out;
}

std::optional<Share> crossover_share(const MarketScenario& s) {
    validate(s);
    const Money exclusive_cost = tebc_exclusive(s);
    const double tz = s.total_units * s.list_price;
    // tebc_shared(x) = intercept - slope * x
    const double intercept = tz * (1.0 - s.incumbent.pct_off_shared) -
                             s.incumbent.lump_sum_shared - s.entrant.lump_sum_shared;
    const double slope = tz * (s.entrant.pct_off_shared - s.incumbent.pct_off_shared);
    if (intercept <= exclusive_cost) return 0.0;  // shared no worse even without the entrant
    if (slope <= 0.0) return std::nullopt;        // shared line never descends to the exclusive cost
    const double x = (intercept - exclusive_cost) / slope;
    if (x > 1.0) return std::nullopt;
    return x;
}

}  // namespace formwdp
