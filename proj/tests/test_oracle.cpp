#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace enclose;
using enclose::test::draw;
using enclose::test::env_at;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("indifference labor solve agrees with the closed-form response") {
    std::mt19937_64 rng(97);
    for (int i = 0; i < 150; ++i) {
        Environment env;
        env.theta = draw(rng, 0.6, 3.0);
        env.alpha = draw(rng, 0.2, 0.85);
        env.lbar = draw(rng, 0.3, 4.0);
        env.mu = draw(rng, 0.0, 1.0);
        const double t = draw(rng, 0.01, 0.99);
        const LaborSplit s = indifference_labor_split(env, t);
        REQUIRE_THAT(s.l, WithinAbs(labor_response(env, t), 1e-10));
        REQUIRE_THAT(s.l + s.one_minus_l, WithinRel(1.0, 1e-12));
    }
}

TEST_CASE("corner inputs short-circuit") {
    const LaborSplit none = indifference_labor_split(env_at(2.0, 1.0), 0.0);
    REQUIRE(none.l == 0.0);
    REQUIRE(none.one_minus_l == 1.0);
    const LaborSplit all = indifference_labor_split(env_at(2.0, 1.0), 1.0);
    REQUIRE(all.l == 1.0);
    REQUIRE(all.one_minus_l == 0.0);
}

TEST_CASE("warm-started sweeps match cold solves") {
    const Environment env = env_at(1.8, 1.4, 0.25);
    double warm = std::numeric_limits<double>::quiet_NaN();
    for (int i = 1; i < 60; ++i) {
        const double t = i / 60.0;
        const LaborSplit warm_solve = indifference_labor_split(env, t, &warm);
        const LaborSplit cold_solve = indifference_labor_split(env, t);
        REQUIRE_THAT(warm_solve.l, WithinAbs(cold_solve.l, 1e-11));
    }
}

TEST_CASE("raw entry gain matches the analytic one") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 100; ++i) {
        Environment env;
        env.theta = draw(rng, 0.8, 3.0);
        env.alpha = draw(rng, 0.25, 0.8);
        env.lbar = draw(rng, 0.3, 5.0);
        env.mu = draw(rng, 0.0, 1.0);
        env.tau = draw(rng, 0.0, 1.0);
        const double t = draw(rng, 0.02, 0.98);
        const double raw = entry_gain_raw(env, t);
        const double analytic = entry_gain(env, t);
        REQUIRE(std::abs(raw - analytic) <= 1e-9 * std::max(1.0, std::abs(analytic)));
    }
}

TEST_CASE("best-response dynamics under substitutes") {
    const Environment env = env_at(2.0, 1.0);
    AgentSimConfig cfg;
    cfg.n_agents = 200;
    const OracleReport up = best_response_dynamics(env, cfg);
    REQUIRE(up.converged);
    REQUIRE(up.nash_verified);
    REQUIRE(up.seed == cfg.seed);
    REQUIRE_THAT(up.t_e, WithinAbs(0.21181587710584623594, 1.0 / 200 + 1e-9));

    cfg.initial_enclosed = 1.0; // same fixed point from the opposite corner
    const OracleReport down = best_response_dynamics(env, cfg);
    REQUIRE(down.converged);
    REQUIRE_THAT(down.t_e, WithinAbs(up.t_e, 1.0 / 200 + 1e-9));

    cfg.initial_enclosed = 0.0;
    cfg.seed = 777; // a different update order lands on the same count
    const OracleReport reseeded = best_response_dynamics(env, cfg);
    REQUIRE_THAT(reseeded.t_e, WithinAbs(up.t_e, 1.0 / 200 + 1e-9));
}

TEST_CASE("best-response dynamics keeps both corners under complements") {
    const Environment env = env_at(1.2, 6.0);
    AgentSimConfig cfg;
    cfg.n_agents = 200;
    cfg.initial_enclosed = 0.0;
    const OracleReport stay_out = best_response_dynamics(env, cfg);
    REQUIRE(stay_out.converged);
    REQUIRE(stay_out.nash_verified);
    REQUIRE(stay_out.t_e == 0.0);

    cfg.initial_enclosed = 1.0;
    const OracleReport stay_in = best_response_dynamics(env, cfg);
    REQUIRE(stay_in.converged);
    REQUIRE(stay_in.nash_verified);
    REQUIRE(stay_in.t_e == 1.0);
}

TEST_CASE("simulation configuration is validated") {
    AgentSimConfig cfg;
    cfg.n_agents = 1;
    REQUIRE_THROWS_AS(best_response_dynamics(env_at(2.0, 1.0), cfg), std::invalid_argument);
    cfg.n_agents = 10;
    cfg.initial_enclosed = 1.5;
    REQUIRE_THROWS_AS(best_response_dynamics(env_at(2.0, 1.0), cfg), std::invalid_argument);
    cfg.initial_enclosed = 0.0;
    cfg.max_rounds = -1;
    REQUIRE_THROWS_AS(best_response_dynamics(env_at(2.0, 1.0), cfg), std::invalid_argument);
}

TEST_CASE("grid search recovers the analytic optima") {
    REQUIRE_THROWS_AS(grid_search_optimum(env_at(2.0, 1.0), Objective::FirstBest, 0.02),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(grid_search_optimum(env_at(2.0, 1.0), Objective::FirstBest, 0.0),
                      std::invalid_argument);

    const double step = 5e-3;
    SECTION("first best, joint (t, l) scan") {
        const GridOptimum g = grid_search_optimum(env_at(2.0, 1.0), Objective::FirstBest, step);
        const PlannerSolution s = first_best_solve(env_at(2.0, 1.0));
        REQUIRE_THAT(g.t_e, WithinAbs(s.t_e, 2.0 * step));
        REQUIRE_THAT(g.l_e, WithinAbs(s.l_e, 2.0 * step));
        REQUIRE(g.value <= s.net_output + 1e-12);
        REQUIRE(g.value >= s.net_output - 1e-3); // a grid point sits near the peak
    }
    SECTION("second best, labor resolved by the indifference solve") {
        const GridOptimum g = grid_search_optimum(env_at(2.0, 1.0), Objective::SecondBest, step);
        const PlannerSolution s = second_best_solve(env_at(2.0, 1.0));
        REQUIRE_THAT(g.t_e, WithinAbs(s.t_e, 2.0 * step));
        REQUIRE(g.value <= s.net_output + 1e-9);
    }
    SECTION("syndicate profit") {
        const GridOptimum g = grid_search_optimum(env_at(2.0, 3.0), Objective::Monopoly, step);
        const MonopolySolution s = monopoly_solve(env_at(2.0, 3.0));
        REQUIRE_THAT(g.t_e, WithinAbs(s.t_e, 2.0 * step));
        REQUIRE(g.value <= s.profit + 1e-9);
    }
    SECTION("corner optima land on the grid ends") {
        REQUIRE(grid_search_optimum(env_at(2.0, 0.2), Objective::FirstBest, step).t_e == 0.0);
        REQUIRE(grid_search_optimum(env_at(2.0, 3.0), Objective::SecondBest, step).t_e == 1.0);
    }
}

TEST_CASE("quadrature cutoff matches the closed form") {
    for (double theta : {1.2, 1.35}) {
        const Environment env = env_at(theta, 1.0);
        REQUIRE_THAT(integral_root_cutoff(env),
                     WithinRel(global_games_cutoff(env), 1e-7));
    }
    REQUIRE_THROWS_AS(integral_root_cutoff(env_at(2.0, 1.0)), std::domain_error);
}
