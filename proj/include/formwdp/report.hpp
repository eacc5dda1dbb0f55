#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "formwdp/lumpsum.hpp"
#include "formwdp/market_model.hpp"

namespace formwdp::report {

/// "$3,029M" / "-$1,217" / "23%" (display-rounded).
std::string format_millions(Money dollars);
std::string format_dollars(Money dollars);
std::string format_percent(Share fraction);

/// Shares used by the printed exhibits.
std::vector<Share> net_price_shares();     // 10% .. 40% by 5
std::vector<Share> benefit_cost_shares();  // 10, 15, 20, 25, 28, 30, 35 %

// CSV output. Every file carries the display-rounded columns followed by
// full-precision *_raw columns, so rounded cells can be re-derived from the
// raw ones. Dialect: comma separator, "." decimal point, header row, LF
// line endings, UTF-8.
void write_curve_csv(const std::vector<CostLine>& lines, std::ostream& out);
void write_net_price_csv(const MarketScenario& s, const std::vector<Share>& shares,
                         std::ostream& out);
void write_benefit_cost_csv(const MarketScenario& s, const std::vector<Share>& shares,
                            std::ostream& out);
void write_gross_rebates_csv(const MarketScenario& s, const std::vector<Share>& shares,
                             std::ostream& out);
void write_rebate_menu_csv(const MarketScenario& s, std::ostream& out);
void write_equalize_csv(const std::vector<int>& biddown_pp,
                        const std::vector<int>& spread_pp, std::ostream& out);

/// Cost-curve chart: one flat polyline (exclusive), one descending
/// polyline (shared), labeled linear axes, and a break-even marker when a
/// crossing exists. Fixed 800x500 viewBox; byte-deterministic output.
void write_curve_svg(const std::vector<CostLine>& lines,
                     std::optional<Share> breakeven, std::ostream& out);

std::string render_equalize_text(const std::vector<int>& biddown_pp,
                                 const std::vector<int>& spread_pp);
std::string render_net_price_text(const MarketScenario& s,
                                  const std::vector<Share>& shares);

}  // namespace formwdp::report
