#include "formwdp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "formwdp/rounding.hpp"

namespace formwdp::report {

namespace {

std::string group_thousands(long long v) {
    std::string digits = std::to_string(v < 0 ? -v : v);
    std::string grouped;
    const std::size_t n = digits.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && (n - i) % 3 == 0) grouped += ',';
        grouped += digits[i];
    }
    return grouped;
}

std::string signed_dollars(long long v) {
    return (v < 0 ? "-$" : "$") + group_thousands(v);
}

std::string raw(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string grid_value(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", snap(x));
    return buf;
}

long long musd(Money dollars) { return std::llround(display_millions(dollars)); }
long long whole(Money dollars) { return std::llround(display_dollars(dollars)); }
long long pct(Share fraction) { return std::llround(display_percent(fraction)); }

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string svg_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string format_millions(Money dollars) {
    return signed_dollars(musd(dollars)) + "M";
}

std::string format_dollars(Money dollars) {
    return signed_dollars(whole(dollars));
}

std::string format_percent(Share fraction) {
    return std::to_string(pct(fraction)) + "%";
}

std::vector<Share> net_price_shares() {
    return {0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
}

std::vector<Share> benefit_cost_shares() {
    return {0.10, 0.15, 0.20, 0.25, 0.28, 0.30, 0.35};
}

void write_curve_csv(const std::vector<CostLine>& lines, std::ostream& out) {
    out << "x,tebc_exclusive,tebc_shared,gross_rebates_exclusive,gross_rebates_shared,"
           "tebc_exclusive_raw,tebc_shared_raw,gross_rebates_exclusive_raw,"
           "gross_rebates_shared_raw\n";
    for (const CostLine& line : lines) {
        out << grid_value(line.x) << ',' << musd(line.tebc_exclusive) << ','
            << musd(line.tebc_shared) << ',' << musd(line.gross_rebates_exclusive) << ','
            << musd(line.gross_rebates_shared) << ',' << raw(line.tebc_exclusive) << ','
            << raw(line.tebc_shared) << ',' << raw(line.gross_rebates_exclusive) << ','
            << raw(line.gross_rebates_shared) << '\n';
    }
}

void write_net_price_csv(const MarketScenario& s, const std::vector<Share>& shares,
                         std::ostream& out) {
    const std::vector<NetPriceLine> bid = net_price_table(s, shares);
    const std::vector<NetPriceLine> no_lump = net_price_table(without_lump_sums(s), shares);
    out << "x,avg_net_price_incumbent,avg_net_price_entrant,pct_off_incumbent,"
           "pct_off_entrant,avg_net_price_incumbent_no_lump,avg_net_price_entrant_no_lump,"
           "pct_off_incumbent_no_lump,pct_off_entrant_no_lump,"
           "avg_net_price_incumbent_raw,avg_net_price_entrant_raw,pct_off_incumbent_raw,"
           "pct_off_entrant_raw,avg_net_price_incumbent_no_lump_raw,"
           "avg_net_price_entrant_no_lump_raw,pct_off_incumbent_no_lump_raw,"
           "pct_off_entrant_no_lump_raw\n";
    for (std::size_t i = 0; i < bid.size(); ++i) {
        const NetPriceLine& a = bid[i];
        const NetPriceLine& b = no_lump[i];
        out << grid_value(a.x) << ',' << whole(a.avg_net_price_incumbent) << ','
            << whole(a.avg_net_price_entrant) << ',' << pct(a.pct_off_incumbent) << ','
            << pct(a.pct_off_entrant) << ',' << whole(b.avg_net_price_incumbent) << ','
            << whole(b.avg_net_price_entrant) << ',' << pct(b.pct_off_incumbent) << ','
            << pct(b.pct_off_entrant) << ',' << raw(a.avg_net_price_incumbent) << ','
            << raw(a.avg_net_price_entrant) << ',' << raw(a.pct_off_incumbent) << ','
            << raw(a.pct_off_entrant) << ',' << raw(b.avg_net_price_incumbent) << ','
            << raw(b.avg_net_price_entrant) << ',' << raw(b.pct_off_incumbent) << ','
            << raw(b.pct_off_entrant) << '\n';
    }
}

void write_benefit_cost_csv(const MarketScenario& s, const std::vector<Share>& shares,
                            std::ostream& out) {
    const MarketScenario plain = without_lump_sums(s);
    out << "x,tebc_exclusive,tebc_shared,tebc_exclusive_no_lump,tebc_shared_no_lump,"
           "tebc_exclusive_raw,tebc_shared_raw,tebc_exclusive_no_lump_raw,"
           "tebc_shared_no_lump_raw\n";
    for (const Share x : shares) {
        const Money te = tebc_exclusive(s);
        const Money ts = tebc_shared(s, x);
        const Money te0 = tebc_exclusive(plain);
        const Money ts0 = tebc_shared(plain, x);
        out << grid_value(x) << ',' << musd(te) << ',' << musd(ts) << ',' << musd(te0) << ','
            << musd(ts0) << ',' << raw(te) << ',' << raw(ts) << ',' << raw(te0) << ','
            << raw(ts0) << '\n';
    }
}

void write_gross_rebates_csv(const MarketScenario& s, const std::vector<Share>& shares,
                             std::ostream& out) {
    const MarketScenario plain = without_lump_sums(s);
    out << "x,gross_rebates_exclusive,gross_rebates_shared,gross_rebates_exclusive_no_lump,"
           "gross_rebates_shared_no_lump,gross_rebates_exclusive_raw,gross_rebates_shared_raw,"
           "gross_rebates_exclusive_no_lump_raw,gross_rebates_shared_no_lump_raw\n";
    for (const Share x : shares) {
        const Money re = gross_rebates(s, Position::Exclusive, x);
        const Money rs = gross_rebates(s, Position::Shared, x);
        const Money re0 = gross_rebates(plain, Position::Exclusive, x);
        const Money rs0 = gross_rebates(plain, Position::Shared, x);
        out << grid_value(x) << ',' << musd(re) << ',' << musd(rs) << ',' << musd(re0) << ','
            << musd(rs0) << ',' << raw(re) << ',' << raw(rs) << ',' << raw(re0) << ','
            << raw(rs0) << '\n';
    }
}

void write_rebate_menu_csv(const MarketScenario& s, std::ostream& out) {
    out << "competitor,list_price,pct_off_exclusive,net_unit_price_exclusive,"
           "lump_sum_exclusive,pct_off_shared,net_unit_price_shared,lump_sum_shared,"
           "net_unit_price_exclusive_raw,net_unit_price_shared_raw\n";
    const Money z = s.list_price;
    const Money inc_excl = z * (1.0 - *s.incumbent.pct_off_exclusive);
    const Money inc_shared = z * (1.0 - s.incumbent.pct_off_shared);
    const Money ent_shared = z * (1.0 - s.entrant.pct_off_shared);
    out << "incumbent," << whole(z) << ',' << pct(*s.incumbent.pct_off_exclusive) << ','
        << whole(inc_excl) << ',' << raw(s.incumbent.lump_sum_exclusive) << ','
        << pct(s.incumbent.pct_off_shared) << ',' << whole(inc_shared) << ','
        << raw(s.incumbent.lump_sum_shared) << ',' << raw(inc_excl) << ','
        << raw(inc_shared) << '\n';
    out << "entrant," << whole(z) << ",,,," << pct(s.entrant.pct_off_shared) << ','
        << whole(ent_shared) << ',' << raw(s.entrant.lump_sum_shared) << ",,"
        << raw(ent_shared) << '\n';
}

void write_equalize_csv(const std::vector<int>& biddown_pp, const std::vector<int>& spread_pp,
                        std::ostream& out) {
    std::vector<Share> biddowns;
    std::vector<Share> spreads;
    for (const int pp : biddown_pp) biddowns.push_back(pp / 100.0);
    for (const int pp : spread_pp) spreads.push_back(pp / 100.0);
    const auto cells = equalizing_share_array(biddowns, spreads);

    out << "spread_pp";
    for (const int pp : biddown_pp) out << ",eq_share_pct_bd" << pp;
    for (const int pp : biddown_pp) out << ",eq_share_raw_bd" << pp;
    out << '\n';
    for (std::size_t i = 0; i < spread_pp.size(); ++i) {
        out << spread_pp[i];
        for (const Share cell : cells[i]) out << ',' << pct(cell);
        for (const Share cell : cells[i]) out << ',' << raw(cell);
        out << '\n';
    }
}

void write_curve_svg(const std::vector<CostLine>& lines, std::optional<Share> breakeven,
                     std::ostream& out) {
    const double left = 90.0;
    const double right = 770.0;
    const double top = 40.0;
    const double bottom = 430.0;

    Money lo = 0.0;
    Money hi = 0.0;
    for (const CostLine& line : lines) {
        hi = std::max({hi, line.tebc_exclusive, line.tebc_shared});
        lo = std::min({lo, line.tebc_exclusive, line.tebc_shared});
    }
    const double tick = 500e6;
    double y_max = std::ceil(hi / tick) * tick;
    double y_min = std::floor(lo / tick) * tick;
    if (y_max <= y_min) y_max = y_min + tick;

    const auto px = [&](double x) { return left + x * (right - left); };
    const auto py = [&](double v) {
        return bottom - (v - y_min) / (y_max - y_min) * (bottom - top);
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
           "font-family=\"Helvetica,Arial,sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";

    // axes
    out << "<line x1=\"" << svg_coord(left) << "\" y1=\"" << svg_coord(bottom) << "\" x2=\""
        << svg_coord(right) << "\" y2=\"" << svg_coord(bottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << svg_coord(left) << "\" y1=\"" << svg_coord(top) << "\" x2=\""
        << svg_coord(left) << "\" y2=\"" << svg_coord(bottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // x ticks every 10 share points
    for (int k = 0; k <= 10; ++k) {
        const double x = k / 10.0;
        out << "<line x1=\"" << svg_coord(px(x)) << "\" y1=\"" << svg_coord(bottom) << "\" x2=\""
            << svg_coord(px(x)) << "\" y2=\"" << svg_coord(bottom + 5)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << svg_coord(px(x)) << "\" y=\"" << svg_coord(bottom + 20)
            << "\" text-anchor=\"middle\">" << k * 10 << "%</text>\n";
    }
    // y ticks every $500M
    for (double v = y_min; v <= y_max + 1.0; v += tick) {
        out << "<line x1=\"" << svg_coord(left - 5) << "\" y1=\"" << svg_coord(py(v))
            << "\" x2=\"" << svg_coord(left) << "\" y2=\"" << svg_coord(py(v))
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << svg_coord(left - 10) << "\" y=\"" << svg_coord(py(v) + 4)
            << "\" text-anchor=\"end\">" << group_thousands(std::llround(v / 1e6))
            << "</text>\n";
    }

    out << "<text x=\"" << svg_coord((left + right) / 2) << "\" y=\"470\" "
           "text-anchor=\"middle\">entrant market share</text>\n";
    out << "<text x=\"20\" y=\"" << svg_coord((top + bottom) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << svg_coord((top + bottom) / 2)
        << ")\">total expected benefit cost ($M)</text>\n";

    const auto polyline = [&](const char* color, auto value_of) {
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const CostLine& line : lines) {
            if (!first) out << ' ';
            first = false;
            out << svg_coord(px(line.x)) << ',' << svg_coord(py(value_of(line)));
        }
        out << "\"/>\n";
    };
    polyline("#1f6fb4", [](const CostLine& l) { return l.tebc_exclusive; });
    polyline("#d62728", [](const CostLine& l) { return l.tebc_shared; });

    // legend
    out << "<text x=\"" << svg_coord(right - 150) << "\" y=\"" << svg_coord(top - 14)
        << "\" fill=\"#1f6fb4\">exclusive</text>\n";
    out << "<text x=\"" << svg_coord(right - 70) << "\" y=\"" << svg_coord(top - 14)
        << "\" fill=\"#d62728\">shared</text>\n";

    if (breakeven && !lines.empty()) {
        const double bx = px(*breakeven);
        const double by = py(lines.front().tebc_exclusive);
        out << "<circle cx=\"" << svg_coord(bx) << "\" cy=\"" << svg_coord(by)
            << "\" r=\"5\" fill=\"black\"/>\n";
        out << "<text x=\"" << svg_coord(bx + 8) << "\" y=\"" << svg_coord(by - 8)
            << "\">break-even " << format_percent(*breakeven) << "</text>\n";
    }
    out << "</svg>\n";
}

std::string render_equalize_text(const std::vector<int>& biddown_pp,
                                 const std::vector<int>& spread_pp) {
    std::vector<Share> biddowns;
    std::vector<Share> spreads;
    for (const int pp : biddown_pp) biddowns.push_back(pp / 100.0);
    for (const int pp : spread_pp) spreads.push_back(pp / 100.0);
    const auto cells = equalizing_share_array(biddowns, spreads);

    std::ostringstream out;
    out << "entrant share required to equalize expected benefit costs\n";
    out << "rows: entrant vs incumbent shared-bid spread (b3 - b2); "
           "columns: incumbent bid-down (b1 - b2)\n\n";
    out << pad_left("spread\\biddown", 15);
    for (const int pp : biddown_pp) out << pad_left(std::to_string(pp) + "%", 7);
    out << '\n';
    for (std::size_t i = 0; i < spread_pp.size(); ++i) {
        out << pad_left(std::to_string(spread_pp[i]) + "%", 15);
        for (const Share cell : cells[i]) out << pad_left(format_percent(cell), 7);
        out << '\n';
    }
    return out.str();
}

std::string render_net_price_text(const MarketScenario& s, const std::vector<Share>& shares) {
    const std::vector<NetPriceLine> bid = net_price_table(s, shares);
    const std::vector<NetPriceLine> plain = net_price_table(without_lump_sums(s), shares);

    std::ostringstream out;
    out << "average net unit prices by entrant share\n\n";
    out << pad_left("entrant share", 28);
    for (const NetPriceLine& line : bid) out << pad_left(format_percent(line.x), 9);
    out << '\n';

    const auto row = [&](const char* label, auto value_of, const std::vector<NetPriceLine>& rows) {
        out << pad_left(label, 28);
        for (const NetPriceLine& line : rows) out << pad_left(value_of(line), 9);
        out << '\n';
    };
    row("incumbent avg net price", [](const NetPriceLine& l) {
        return format_dollars(l.avg_net_price_incumbent);
    }, bid);
    row("incumbent % off list", [](const NetPriceLine& l) {
        return format_percent(l.pct_off_incumbent);
    }, bid);
    row("entrant avg net price", [](const NetPriceLine& l) {
        return format_dollars(l.avg_net_price_entrant);
    }, bid);
    row("entrant % off list", [](const NetPriceLine& l) {
        return format_percent(l.pct_off_entrant);
    }, bid);
    out << '\n';
    row("incumbent avg (no lumps)", [](const NetPriceLine& l) {
        return format_dollars(l.avg_net_price_incumbent);
    }, plain);
    row("entrant avg (no lumps)", [](const NetPriceLine& l) {
        return format_dollars(l.avg_net_price_entrant);
    }, plain);
    return out.str();
}

}  // namespace formwdp::report
