#pragma once

#include <random>

#include "formwdp/market_model.hpp"

namespace formwdp::testing {

inline MarketScenario humira_no_lump() {
    MarketScenario s;
    s.total_units = 3.5e6;
    s.list_price = 1731.0;
    s.incumbent.pct_off_exclusive = 0.50;
    s.incumbent.pct_off_shared = 0.44;
    s.entrant.pct_off_shared = 0.70;
    return s;
}

inline MarketScenario humira_lump() {
    MarketScenario s;
    s.total_units = 3.5e6;
    s.list_price = 1731.0;
    s.incumbent.pct_off_exclusive = 0.253;
    s.incumbent.pct_off_shared = 0.126;
    s.incumbent.lump_sum_exclusive = 1500e6;
    s.incumbent.lump_sum_shared = 1200e6;
    s.entrant.pct_off_shared = 0.30;
    s.entrant.lump_sum_shared = 850e6;
    return s;
}

/// Any valid scenario: bids and lump sums unconstrained beyond the schema.
inline MarketScenario random_scenario(std::mt19937_64& rng, bool with_lumps) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MarketScenario s;
    s.total_units = std::uniform_int_distribution<long>(10'000, 10'000'000)(rng);
    s.list_price = 1.0 + 4999.0 * unit(rng);
    const double b2 = 0.9 * unit(rng);
    s.incumbent.pct_off_shared = b2;
    s.incumbent.pct_off_exclusive = b2 + (1.0 - b2) * unit(rng);
    s.entrant.pct_off_shared = unit(rng);
    if (with_lumps) {
        const double tz = s.total_units * s.list_price;
        s.incumbent.lump_sum_exclusive = 0.2 * tz * unit(rng);
        s.incumbent.lump_sum_shared = 0.2 * tz * unit(rng);
        s.entrant.lump_sum_shared = 0.2 * tz * unit(rng);
    }
    return s;
}

/// No lump sums, entrant outbids incumbent for shared, and the break-even
/// share lands inside (0, 0.9].
inline MarketScenario random_breakeven_scenario(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MarketScenario s;
    s.total_units = std::uniform_int_distribution<long>(10'000, 10'000'000)(rng);
    s.list_price = 1.0 + 4999.0 * unit(rng);
    const double b2 = 0.5 * unit(rng);
    const double b3 = b2 + 0.05 + (1.0 - b2 - 0.05) * unit(rng);
    const double b1 = b2 + 0.9 * (b3 - b2) * unit(rng);
    s.incumbent.pct_off_shared = b2;
    s.incumbent.pct_off_exclusive = b1;
    s.entrant.pct_off_shared = b3;
    return s;
}

}  // namespace formwdp::testing
