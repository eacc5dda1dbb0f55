#pragma once

#include <optional>
#include <vector>

#include "formwdp/market_model.hpp"

namespace formwdp {

/// Average net unit prices for both competitors at one entrant share.
/// With lump sums the averages move with share (in opposite directions);
/// without, they equal the flat net unit prices and the pct_off fields
/// reproduce the raw bids exactly.
struct NetPriceLine {
    Share x = 0.0;
    Money avg_net_price_incumbent = 0.0;
    Money avg_net_price_entrant = 0.0;  // negative at low shares under large lump sums
    Share pct_off_incumbent = 0.0;      // 1 - avg / list_price
    Share pct_off_entrant = 0.0;        // may exceed 1
};

/// Price-cost test result for lump-sum rebates.
struct ExclusionVerdict {
    Share threshold_share = 0.0;
    Share entrant_pct_off_at_threshold = 0.0;
    Share cutoff = 0.0;
    bool exclusionary = false;
    std::optional<Share> sustainable_share;  // smallest grid share with pct off at/below cutoff
};

/// Z * (1 - b2) - LS2 / (T * (1 - x)); flat at Z * (1 - b2) when LS2 = 0.
Money avg_net_price_incumbent(const MarketScenario& s, Share x);

/// Z * (1 - b3) - LS3 / (T * x); flat at Z * (1 - b3) when LS3 = 0.
/// May be negative.
Money avg_net_price_entrant(const MarketScenario& s, Share x);

std::vector<NetPriceLine> net_price_table(const MarketScenario& s,
                                          const std::vector<Share>& shares);

/// Exclusionary when the entrant's percent off list at the threshold share
/// strictly exceeds the sustainability cutoff.
ExclusionVerdict exclusion_test(const MarketScenario& s);

/// Copy of the scenario with every lump sum removed.
MarketScenario without_lump_sums(const MarketScenario& s);

}  // namespace formwdp
