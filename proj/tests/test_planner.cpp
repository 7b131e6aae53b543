#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace enclose;
using enclose::test::draw;
using enclose::test::env_at;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
// anchors below were produced by an independent 60-digit implementation
// working from raw marginal products (numeric labor solve + root-finding);
// boundary slopes there were taken at a 1e-9 interior offset, which caps
// agreement on threshold anchors near 1e-8 relative
constexpr double kFirstBestLabrHalf = 0.88888888888888888889;
constexpr double kFbStart2 = 0.28056586083880835947;
constexpr double kFbFull2 = 2.2445268690348177666;
constexpr double kSbStart2 = 0.4752805784019431112;
constexpr double kSbFull2 = 1.8371173070873835736; // exact form c/(theta A (1-a)) inverted
constexpr double kTFbStar = 0.36631793436017269914;
constexpr double kFbNetStar = 1.1612072972917739697;
constexpr double kTSbStar = 0.41945050022870659662;
constexpr double kSbNetStar = 1.1112520660066967466;
} // namespace

TEST_CASE("first-best labor assignment") {
    const Environment env = env_at(2.0, 1.0);
    REQUIRE(first_best_labor(env, 0.0) == 0.0);
    REQUIRE(first_best_labor(env, 1.0) == 1.0);
    REQUIRE_THAT(first_best_labor(env, 0.5), WithinRel(kFirstBestLabrHalf, 1e-13));
}

TEST_CASE("first-best output level and slope") {
    const Environment env = env_at(2.0, 1.0);
    REQUIRE_THAT(first_best_output(env, 0.0), WithinRel(1.0, 1e-14));
    REQUIRE_THAT(first_best_output(env, 1.0), WithinRel(2.0, 1e-13));
    for (double t : {0.1, 0.3, 0.55, 0.9}) {
        const double h = 1e-6;
        const double fd = (first_best_output(env, t + h) - first_best_output(env, t - h)) /
                          (2.0 * h);
        REQUIRE_THAT(first_best_output_slope(env, t), WithinRel(fd, 1e-8));
    }
}

TEST_CASE("first-best thresholds at theta = 2") {
    const Environment env = env_at(2.0, 1.0);
    const FirstBestThresholds th = first_best_thresholds(env);
    REQUIRE_THAT(th.start_enclosure, WithinRel(kFbStart2, 1e-7));
    REQUIRE_THAT(th.full_enclosure, WithinRel(kFbFull2, 1e-7));
    REQUIRE_THAT(th.full_enclosure, WithinRel(composite(env).lambda1 * th.start_enclosure,
                                              1e-14));
    REQUIRE_THROWS_AS(first_best_thresholds(env_at(1.0, 1.0)), std::domain_error);
}

TEST_CASE("first-best solve across regimes") {
    SECTION("interior optimum at the benchmark point") {
        const PlannerSolution s = first_best_solve(env_at(2.0, 1.0));
        REQUIRE(s.regime == Regime::Partial);
        REQUIRE_THAT(s.t_e, WithinRel(kTFbStar, 1e-10));
        REQUIRE_THAT(s.net_output, WithinRel(kFbNetStar, 1e-12));
        REQUIRE_THAT(s.l_e, WithinRel(first_best_labor(env_at(2.0, 1.0), s.t_e), 1e-13));
        REQUIRE_THAT(s.gross_output - s.net_output, WithinAbs(s.t_e, 1e-12)); // c = 1
    }
    SECTION("sparse labor keeps the commons") {
        const PlannerSolution s = first_best_solve(env_at(2.0, 0.2));
        REQUIRE(s.regime == Regime::NoEnclosure);
        REQUIRE(s.t_e == 0.0);
        REQUIRE_THAT(s.net_output, WithinRel(first_best_output(env_at(2.0, 0.2), 0.0), 1e-14));
    }
    SECTION("dense labor encloses everything") {
        const Environment env = env_at(2.0, 3.0);
        const PlannerSolution s = first_best_solve(env);
        REQUIRE(s.regime == Regime::Full);
        REQUIRE(s.t_e == 1.0);
        REQUIRE_THAT(s.net_output, WithinRel(first_best_output(env, 1.0) - 1.0, 1e-13));
    }
    SECTION("premium below one never encloses") {
        for (double lbar : {0.5, 2.0, 50.0})
            REQUIRE(first_best_solve(env_at(0.9, lbar)).regime == Regime::NoEnclosure);
    }
}

TEST_CASE("free-mobility output matches the sector sum at equilibrium labor") {
    const Environment env = env_at(2.0, 1.0);
    const double l_half = 64.0 / 91.0; // independently derived labor share at t = 0.5
    const double sum = output_per_land(env, env.theta, 0.5, l_half) +
                       output_per_land(env, 1.0, 0.5, 1.0 - l_half);
    REQUIRE_THAT(second_best_output(env, 0.5), WithinRel(sum, 1e-12));
    for (double t : {0.1, 0.35, 0.6, 0.92}) {
        const double h = 1e-6;
        const double fd = (second_best_output(env, t + h) - second_best_output(env, t - h)) /
                          (2.0 * h);
        REQUIRE_THAT(second_best_output_slope(env, t), WithinRel(fd, 1e-8));
    }
}

TEST_CASE("second-best thresholds at theta = 2") {
    const SecondBestThresholds th = second_best_thresholds(env_at(2.0, 1.0));
    REQUIRE_FALSE(th.switch_full.has_value()); // concave side of the knife edge
    REQUIRE(th.start_enclosure.has_value());
    REQUIRE(th.full_enclosure.has_value());
    REQUIRE_THAT(*th.start_enclosure, WithinRel(kSbStart2, 1e-7));
    REQUIRE_THAT(*th.full_enclosure, WithinRel(kSbFull2, 1e-12));
}

TEST_CASE("second-best full-enclosure locus equals the decentralized one") {
    for (int j = 1; j <= 50; ++j) {
        const Environment env = env_at(1.5 + 2.5 * j / 50.0, 1.0);
        const double sb = *second_best_thresholds(env).full_enclosure;
        const double dec = decentralized_thresholds(env).entry_at_full;
        REQUIRE(std::abs(sb - dec) <= 1e-12 * sb);
    }
}

TEST_CASE("second-best solve across regimes") {
    SECTION("interior optimum at the benchmark point") {
        const PlannerSolution s = second_best_solve(env_at(2.0, 1.0));
        REQUIRE(s.regime == Regime::Partial);
        REQUIRE_THAT(s.t_e, WithinRel(kTSbStar, 1e-9));
        REQUIRE_THAT(s.net_output, WithinRel(kSbNetStar, 1e-12));
    }
    SECTION("convex side is all-or-nothing") {
        // theta = 1.2 puts lambda0 below one; the switch sits at lbar = 5^1.5
        REQUIRE(second_best_solve(env_at(1.2, 10.0)).regime == Regime::NoEnclosure);
        const PlannerSolution s = second_best_solve(env_at(1.2, 12.0));
        REQUIRE(s.regime == Regime::Full);
        REQUIRE(s.t_e == 1.0);
    }
    SECTION("full possession-rent retention reproduces the first best") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 40; ++i) {
            Environment env = env_at(draw(rng, 1.1, 3.0), draw(rng, 0.3, 5.0), 1.0);
            const PlannerSolution sb = second_best_solve(env);
            env.mu = 0.0;
            const PlannerSolution fb = first_best_solve(env);
            REQUIRE(sb.regime == fb.regime);
            REQUIRE_THAT(sb.t_e, WithinAbs(fb.t_e, 1e-9));
            REQUIRE_THAT(sb.net_output, WithinRel(fb.net_output, 1e-10));
        }
    }
}
