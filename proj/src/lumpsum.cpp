#include "formwdp/lumpsum.hpp"

#include <cmath>

namespace formwdp {

namespace {

void check_share(Share x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("entrant share must lie in [0, 1]");
}

// Percent off list implied by the entrant's average net price. Computed
// from the raw bid when there is no lump sum, so the zero-lump case
// reproduces the bid bit-exactly.
Share entrant_pct_off(const MarketScenario& s, Share x) {
    if (s.entrant.lump_sum_shared == 0.0) return s.entrant.pct_off_shared;
    return 1.0 - avg_net_price_entrant(s, x) / s.list_price;
}

Share incumbent_pct_off(const MarketScenario& s, Share x) {
    if (s.incumbent.lump_sum_shared == 0.0) return s.incumbent.pct_off_shared;
    return 1.0 - avg_net_price_incumbent(s, x) / s.list_price;
}

}  // namespace

Money avg_net_price_incumbent(const MarketScenario& s, Share x) {
    check_share(x);
    const Money flat = s.list_price * (1.0 - s.incumbent.pct_off_shared);
    if (s.incumbent.lump_sum_shared == 0.0) return flat;
    if (x >= 1.0)
        throw DegenerateShare("incumbent serves no units at x = 1; average net price undefined");
    return flat - s.incumbent.lump_sum_shared / (s.total_units * (1.0 - x));
}

Money avg_net_price_entrant(const MarketScenario& s, Share x) {
    check_share(x);
    const Money flat = s.list_price * (1.0 - s.entrant.pct_off_shared);
    if (s.entrant.lump_sum_shared == 0.0) return flat;
    if (x <= 0.0)
        throw DegenerateShare("entrant serves no units at x = 0; average net price undefined");
    return flat - s.entrant.lump_sum_shared / (s.total_units * x);
}

std::vector<NetPriceLine> net_price_table(const MarketScenario& s,
                                          const std::vector<Share>& shares) {
    validate(s);
    std::vector<NetPriceLine> lines;
    lines.reserve(shares.size());
    for (const Share x : shares) {
        NetPriceLine line;
        line.x = x;
        line.avg_net_price_incumbent = avg_net_price_incumbent(s, x);
        line.avg_net_price_entrant = avg_net_price_entrant(s, x);
        line.pct_off_incumbent = incumbent_pct_off(s, x);
        line.pct_off_entrant = entrant_pct_off(s, x);
        lines.push_back(line);
    }
    return lines;
}

ExclusionVerdict exclusion_test(const MarketScenario& s) {
    validate(s);
    ExclusionVerdict verdict;
    verdict.threshold_share = s.analysis.threshold_share;
    verdict.cutoff = s.analysis.sustainability_cutoff;
    verdict.entrant_pct_off_at_threshold = entrant_pct_off(s, verdict.threshold_share);
    verdict.exclusionary = verdict.entrant_pct_off_at_threshold > verdict.cutoff;
    for (const Share x : share_grid(s.analysis.share_grid_step)) {
        if (x <= 0.0 && s.entrant.lump_sum_shared > 0.0) continue;  // average undefined
        if (entrant_pct_off(s, x) <= verdict.cutoff) {
            verdict.sustainable_share = x;
            break;
        }
    }
    return verdict;
}

MarketScenario without_lump_sums(const MarketScenario& s) {
    MarketScenario out = s;
    out.incumbent.lump_sum_exclusive = 0.0;
    out.incumbent.lump_sum_shared = 0.0;
    out.entrant.lump_sum_exclusive = 0.0;
    out.entrant.lump_sum_shared = 0.0;
    return out;
}

}  // namespace formwdp
