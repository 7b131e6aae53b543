#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace enclose;
using enclose::test::draw;
using enclose::test::env_at;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kTMonoStar = 0.77399071963427161418; // theta = 2, lbar = 3
constexpr double kProfitStar = 0.40433699776119014661;
constexpr double kMonoFull2 = 3.8129904738224970076;
constexpr double kMonoFullVariant2 = 5.8704828763339582401;
} // namespace

TEST_CASE("profit and its slope") {
    const Environment env = env_at(2.0, 3.0);
    REQUIRE(monopoly_profit(env, 0.0) == 0.0);
    REQUIRE_THAT(monopoly_profit(env, 1.0),
                 WithinRel((rental_rate(env, 1.0) - 1.0) * 1.0, 1e-13));
    for (double t : {0.15, 0.4, 0.77, 0.95}) {
        const double h = 1e-6;
        const double fd =
            (monopoly_profit(env, t + h) - monopoly_profit(env, t - h)) / (2.0 * h);
        REQUIRE_THAT(monopoly_profit_slope(env, t), WithinRel(fd, 1e-7));
    }
}

TEST_CASE("syndicate optimum at theta = 2, lbar = 3") {
    const MonopolySolution s = monopoly_solve(env_at(2.0, 3.0));
    REQUIRE(s.regime == Regime::Partial);
    REQUIRE_THAT(s.t_e, WithinRel(kTMonoStar, 1e-10));
    REQUIRE_THAT(s.profit, WithinRel(kProfitStar, 1e-12));
    REQUIRE_THAT(s.net_output,
                 WithinRel(second_best_output(env_at(2.0, 3.0), s.t_e) - s.t_e, 1e-12));
}

TEST_CASE("regulation parameters are zeroed before solving") {
    const MonopolySolution base = monopoly_solve(env_at(2.0, 3.0));
    const MonopolySolution regulated = monopoly_solve(env_at(2.0, 3.0, 0.8, 0.5));
    REQUIRE(regulated.regime == base.regime);
    REQUIRE(regulated.t_e == base.t_e);
    REQUIRE(regulated.profit == base.profit);
}

TEST_CASE("corner regimes") {
    SECTION("concave side") {
        REQUIRE(monopoly_solve(env_at(2.0, 0.7)).regime == Regime::NoEnclosure);
        REQUIRE(monopoly_solve(env_at(2.0, 0.8)).regime == Regime::Partial);
        const MonopolySolution s = monopoly_solve(env_at(2.0, 20.0));
        REQUIRE(s.regime == Regime::Full);
        REQUIRE(s.t_e == 1.0);
    }
    SECTION("convex side is all-or-nothing") {
        REQUIRE(monopoly_solve(env_at(1.2, 3.0)).regime == Regime::NoEnclosure);
        const MonopolySolution s = monopoly_solve(env_at(1.2, 4.5));
        REQUIRE(s.regime == Regime::Full);
        REQUIRE(s.profit > 0.0);
    }
}

TEST_CASE("threshold loci at theta = 2") {
    const MonopolyThresholds th = monopoly_thresholds(env_at(2.0, 1.0));
    REQUIRE_FALSE(th.switch_full.has_value());
    REQUIRE(th.start_enclosure.has_value());
    REQUIRE(th.full_enclosure.has_value());
    REQUIRE(th.full_enclosure_variant.has_value());
    REQUIRE_THAT(*th.start_enclosure,
                 WithinRel(decentralized_thresholds(env_at(2.0, 1.0)).entry_at_none, 1e-14));
    REQUIRE_THAT(*th.full_enclosure, WithinRel(kMonoFull2, 1e-7));
    REQUIRE_THAT(*th.full_enclosure_variant, WithinRel(kMonoFullVariant2, 1e-12));

    // the implemented locus satisfies the first-order condition at t = 1;
    // the circulating variant visibly does not
    REQUIRE_THAT(monopoly_profit_slope(env_at(2.0, *th.full_enclosure), 1.0),
                 WithinAbs(0.0, 1e-10));
    REQUIRE(std::abs(monopoly_profit_slope(env_at(2.0, *th.full_enclosure_variant), 1.0)) >
            1e-3);
}

TEST_CASE("threshold loci under a weak premium") {
    const MonopolyThresholds th = monopoly_thresholds(env_at(1.2, 1.0));
    REQUIRE(th.switch_full.has_value());
    REQUIRE_FALSE(th.start_enclosure.has_value());
    REQUIRE_THAT(*th.switch_full,
                 WithinRel(decentralized_thresholds(env_at(1.2, 1.0)).entry_at_full, 1e-14));
    // profit at full enclosure changes sign across the switch locus
    REQUIRE(monopoly_profit(env_at(1.2, *th.switch_full * 0.99), 1.0) < 0.0);
    REQUIRE(monopoly_profit(env_at(1.2, *th.switch_full * 1.01), 1.0) > 0.0);
}

TEST_CASE("solve is consistent with its own slope across random economies") {
    std::mt19937_64 rng(57);
    for (int i = 0; i < 120; ++i) {
        Environment env;
        env.theta = draw(rng, 1.6, 3.2);
        env.alpha = draw(rng, 0.3, 0.8);
        env.lbar = draw(rng, 0.5, 8.0);
        const MonopolySolution s = monopoly_solve(env);
        switch (s.regime) {
            case Regime::Partial:
                REQUIRE_THAT(monopoly_profit_slope(env, s.t_e), WithinAbs(0.0, 1e-9));
                REQUIRE(s.profit >= 0.0);
                break;
            case Regime::Full:
                REQUIRE(s.profit >= 0.0);
                REQUIRE(s.profit >= monopoly_profit(env, 0.5) - 1e-12);
                break;
            case Regime::NoEnclosure:
                REQUIRE(s.profit == 0.0);
                break;
            default:
                FAIL("unexpected regime");
        }
    }
}
