#include <doctest.h>

#include <cmath>
#include <random>

#include "formwdp/lumpsum.hpp"
#include "formwdp/market_model.hpp"
#include "formwdp/rounding.hpp"
#include "helpers.hpp"

using namespace formwdp;
using testing::humira_lump;
using testing::humira_no_lump;
using testing::random_scenario;

TEST_CASE("tebc_exclusive matches the reference market") {
    MarketScenario s = humira_no_lump();
    CHECK(tebc_exclusive(s) == doctest::Approx(3029.25e6).epsilon(1e-12));

    s.incumbent.pct_off_exclusive = 1.0;  // full rebate
    CHECK(tebc_exclusive(s) == 0.0);

    MarketScenario lump = humira_lump();
    CHECK(tebc_exclusive(lump) == doctest::Approx(3025.6995e6).epsilon(1e-12));

    s.incumbent.pct_off_exclusive.reset();
    CHECK_THROWS_AS(tebc_exclusive(s), MissingBid);
}

TEST_CASE("tebc_shared matches the reference market") {
    const MarketScenario s = humira_no_lump();
    CHECK(display_millions(tebc_shared(s, 0.20)) == 3078);
    CHECK(tebc_shared(s, 0.0) == doctest::Approx(3392.76e6).epsilon(1e-12));

    const MarketScenario lump = humira_lump();
    CHECK(display_millions(tebc_shared(lump, 0.20)) == 3034);

    CHECK_THROWS_AS(tebc_shared(s, -0.01), DomainError);
    CHECK_THROWS_AS(tebc_shared(s, 1.01), DomainError);
}

TEST_CASE("breakeven_share closed form") {
    CHECK(breakeven_share(0.50, 0.44, 0.70) == doctest::Approx(0.230769).epsilon(1e-5));
    CHECK(breakeven_share(0.44, 0.44, 0.70) == 0.0);
    CHECK(breakeven_share(0.50, 0.48, 0.58) == doctest::Approx(0.20).epsilon(1e-12));

    // values above 1 are informative, not clamped
    CHECK(breakeven_share(0.50, 0.44, 0.46) == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(breakeven_share(0.50, 0.44, 0.44), NoBreakeven);
    CHECK_THROWS_AS(breakeven_share(0.50, 0.44, 0.40), NoBreakeven);
    CHECK_THROWS_AS(breakeven_share(0.40, 0.44, 0.70), DomainError);
}

TEST_CASE("breakeven_share agrees with solving the cost equality numerically") {
    // independent check: bisect tebc_shared(x) = tebc_exclusive on [0, 1]
    MarketScenario s = humira_no_lump();
    s.incumbent.pct_off_exclusive = 0.50;
    s.incumbent.pct_off_shared = 0.48;
    s.entrant.pct_off_shared = 0.58;
    const Money target = tebc_exclusive(s);
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (tebc_shared(s, mid) > target ? lo : hi) = mid;
    }
    CHECK(breakeven_share(0.50, 0.48, 0.58) == doctest::Approx(hi).epsilon(1e-9));
}

TEST_CASE("breakeven_units reproduces the contractor sizing") {
    CHECK(breakeven_units(100, 50, 80, 30) == 60.0);
    CHECK(breakeven_units(100, 80, 80, 30) == 0.0);
    CHECK(breakeven_units(200, 50, 80, 30) == 120.0);
    CHECK_THROWS_AS(breakeven_units(100, 50, 30, 30), NoBreakeven);
    CHECK_THROWS_AS(breakeven_units(100, 50, 30, 80), NoBreakeven);
}

TEST_CASE("cost_curve hits the tabulated shared costs") {
    const MarketScenario s = humira_no_lump();
    const auto lines = cost_curve(s);
    REQUIRE(lines.size() == 101);

    const auto at = [&](double x) {
        for (const CostLine& line : lines)
            if (std::abs(line.x - x) < 1e-9) return line;
        FAIL("grid point not found");
        return CostLine{};
    };
    CHECK(display_millions(at(0.25).tebc_shared) == 2999);
    CHECK(display_millions(at(0.28).tebc_shared) == 2952);
    CHECK(at(0.0).tebc_shared ==
          doctest::Approx(s.total_units * s.list_price * 0.56).epsilon(1e-12));
}

TEST_CASE("cost_curve boundary with lump sums") {
    const MarketScenario s = humira_lump();
    const auto lines = cost_curve(s);
    const double tz = s.total_units * s.list_price;
    CHECK(lines.front().x == 0.0);
    CHECK(lines.front().tebc_shared ==
          doctest::Approx(tz * (1.0 - 0.126) - 1200e6 - 850e6).epsilon(1e-12));
    CHECK(lines.back().x == 1.0);
}

TEST_CASE("conservation: cost plus rebates is the whole market") {
    std::mt19937_64 rng(20230901);
    for (int i = 0; i < 200; ++i) {
        const MarketScenario s = random_scenario(rng, i % 2 == 1);
        const double tz = s.total_units * s.list_price;
        for (const CostLine& line : cost_curve(s)) {
            CHECK(std::abs(line.tebc_exclusive + line.gross_rebates_exclusive - tz) <=
                  1e-6 * tz);
            CHECK(std::abs(line.tebc_shared + line.gross_rebates_shared - tz) <= 1e-6 * tz);
        }
    }
}

TEST_CASE("slope_per_point") {
    const MarketScenario s = humira_no_lump();
    CHECK(slope_per_point(s) == doctest::Approx(15.7521e6).epsilon(1e-9));

    MarketScenario wide = s;
    wide.incumbent.pct_off_shared = 0.40;  // spread 0.30
    CHECK(slope_per_point(wide) == doctest::Approx(18.1755e6).epsilon(1e-9));

    MarketScenario flat = s;
    flat.entrant.pct_off_shared = flat.incumbent.pct_off_shared;
    CHECK(slope_per_point(flat) == 0.0);
}

TEST_CASE("equalizing_share_array cells") {
    const auto cells = equalizing_share_array({0.06}, {0.30});
    CHECK(cells[0][0] == doctest::Approx(0.20).epsilon(1e-12));

    const auto cells2 = equalizing_share_array({0.03}, {0.20});
    CHECK(cells2[0][0] == doctest::Approx(0.15).epsilon(1e-12));

    const auto cells3 = equalizing_share_array({0.10}, {0.55});
    CHECK(cells3[0][0] == doctest::Approx(0.1818).epsilon(1e-3));
    CHECK(display_percent(cells3[0][0]) == 18);

    CHECK_THROWS_AS(equalizing_share_array({0.05}, {0.0}), NoBreakeven);
}

TEST_CASE("decide_assignment follows the cost comparison with ties to shared") {
    const MarketScenario s = humira_no_lump();

    const AssignmentOutcome shared = decide_assignment(s, 0.25);
    CHECK(shared.chosen == Position::Shared);
    CHECK(display_millions(shared.tebc_shared) == 2999);
    CHECK(display_millions(shared.tebc_exclusive) == 3029);

    const AssignmentOutcome exclusive = decide_assignment(s, 0.10);
    CHECK(exclusive.chosen == Position::Exclusive);
    CHECK(display_millions(exclusive.tebc_shared) == 3235);

    REQUIRE(shared.breakeven.has_value());
    const AssignmentOutcome tie = decide_assignment(s, *shared.breakeven);
    CHECK(std::abs(tie.tebc_shared - tie.tebc_exclusive) <=
          1e-9 * s.total_units * s.list_price);
    // exact tie rule: equal costs go shared
    MarketScenario even = s;
    even.incumbent.pct_off_shared = *even.incumbent.pct_off_exclusive;
    even.entrant.pct_off_shared = *even.incumbent.pct_off_exclusive;
    const AssignmentOutcome equal = decide_assignment(even, 0.5);
    CHECK(equal.tebc_shared == equal.tebc_exclusive);
    CHECK(equal.chosen == Position::Shared);
}

TEST_CASE("breakeven consistency: shared cost at break-even equals exclusive cost") {
    std::mt19937_64 rng(77001);
    for (int i = 0; i < 500; ++i) {
        const MarketScenario s = testing::random_breakeven_scenario(rng);
        const Share x = breakeven_share(*s.incumbent.pct_off_exclusive,
                                        s.incumbent.pct_off_shared,
                                        s.entrant.pct_off_shared);
        REQUIRE(x <= 1.0);
        CHECK(std::abs(tebc_shared(s, x) - tebc_exclusive(s)) <=
              1e-6 * s.total_units * s.list_price);
    }
}

TEST_CASE("linearity of the shared cost in the entrant share") {
    std::mt19937_64 rng(77002);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const MarketScenario s = random_scenario(rng, i % 3 == 0);
        const double xa = unit(rng);
        const double xb = unit(rng);
        const double lambda = unit(rng);
        const double blend = lambda * xa + (1.0 - lambda) * xb;
        const double direct = tebc_shared(s, blend);
        const double mixed = lambda * tebc_shared(s, xa) + (1.0 - lambda) * tebc_shared(s, xb);
        CHECK(std::abs(direct - mixed) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("monotonicity: shared cost strictly decreasing iff the entrant outbids") {
    std::mt19937_64 rng(77003);
    for (int i = 0; i < 100; ++i) {
        MarketScenario s = random_scenario(rng, i % 2 == 0);
        const bool outbids = s.entrant.pct_off_shared > s.incumbent.pct_off_shared;
        const auto grid = share_grid(0.01);
        bool strictly_decreasing = true;
        for (std::size_t k = 1; k < grid.size(); ++k)
            if (!(tebc_shared(s, grid[k]) < tebc_shared(s, grid[k - 1])))
                strictly_decreasing = false;
        CHECK(strictly_decreasing == outbids);
    }
}

TEST_CASE("scale invariance in the market size") {
    std::mt19937_64 rng(77004);
    std::uniform_real_distribution<double> scale_dist(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        const MarketScenario s = random_scenario(rng, true);
        const double k = scale_dist(rng);
        MarketScenario scaled = s;
        scaled.total_units *= k;
        scaled.incumbent.lump_sum_exclusive *= k;
        scaled.incumbent.lump_sum_shared *= k;
        scaled.entrant.lump_sum_shared *= k;

        CHECK(tebc_exclusive(scaled) ==
              doctest::Approx(k * tebc_exclusive(s)).epsilon(1e-12));
        CHECK(tebc_shared(scaled, 0.3) ==
              doctest::Approx(k * tebc_shared(s, 0.3)).epsilon(1e-12));
        CHECK(gross_rebates(scaled, Position::Shared, 0.3) ==
              doctest::Approx(k * gross_rebates(s, Position::Shared, 0.3)).epsilon(1e-12));
        CHECK(decide_assignment(scaled, 0.3).chosen == decide_assignment(s, 0.3).chosen);
    }
}

TEST_CASE("grid-vs-formula: the curve sign change brackets the break-even share") {
    std::mt19937_64 rng(77005);
    for (int i = 0; i < 100; ++i) {
        const MarketScenario s = testing::random_breakeven_scenario(rng);
        const Share breakeven = breakeven_share(*s.incumbent.pct_off_exclusive,
                                                s.incumbent.pct_off_shared,
                                                s.entrant.pct_off_shared);
        const auto lines = cost_curve(s);
        double first_shared = 2.0;
        for (const CostLine& line : lines) {
            if (line.tebc_shared <= line.tebc_exclusive) {
                first_shared = line.x;
                break;
            }
        }
        REQUIRE(first_shared <= 1.0);
        CHECK(std::abs(first_shared - breakeven) <= s.analysis.share_grid_step + 1e-9);
    }
}

TEST_CASE("crossover_share reduces to the closed form without lump sums") {
    const MarketScenario s = humira_no_lump();
    const auto crossing = crossover_share(s);
    REQUIRE(crossing.has_value());
    CHECK(*crossing == doctest::Approx(6.0 / 26.0).epsilon(1e-12));

    // with lump sums the crossing shifts; check it satisfies the equality
    const MarketScenario lump = humira_lump();
    const auto lump_crossing = crossover_share(lump);
    REQUIRE(lump_crossing.has_value());
    CHECK(tebc_shared(lump, *lump_crossing) ==
          doctest::Approx(tebc_exclusive(lump)).epsilon(1e-9));

    MarketScenario never = s;
    never.entrant.pct_off_shared = never.incumbent.pct_off_shared;
    CHECK(!crossover_share(never).has_value());
}

TEST_CASE("validate names the offending field") {
    MarketScenario s = humira_no_lump();
    s.entrant.pct_off_shared = 1.2;
    CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("entrant.pct_off_shared"),
                         ValidationError);

    MarketScenario missing = humira_no_lump();
    missing.incumbent.pct_off_exclusive.reset();
    CHECK_THROWS_WITH_AS(validate(missing), doctest::Contains("incumbent.pct_off_exclusive"),
                         ValidationError);

    MarketScenario entrant_exclusive = humira_no_lump();
    entrant_exclusive.entrant.pct_off_exclusive = 0.6;
    CHECK_THROWS_WITH_AS(validate(entrant_exclusive),
                         doctest::Contains("entrant.pct_off_exclusive"), ValidationError);

    MarketScenario bad_units = humira_no_lump();
    bad_units.total_units = 0.0;
    CHECK_THROWS_WITH_AS(validate(bad_units), doctest::Contains("market.total_units"),
                         ValidationError);
}
