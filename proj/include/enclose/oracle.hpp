#pragma once
/* oracle.hpp -- brute-force verification of the closed-form machinery.
 *
 * Everything in this header reconstructs equilibrium objects from raw
 * marginal products, without touching the composite-parameter shortcuts
 * the rest of the library relies on. It exists so the analytic layer can
 * be cross-checked: an agent-based best-response simulation, dense grid
 * maximization of the planner and monopoly objectives, and a quadrature
 * root for the risk-dominance cutoff. Slow by design; tests and the
 * `verify` CLI subcommand are the intended callers.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "environment.hpp"
#include "numeric.hpp"

namespace enclose {

// labor allocation with its complement tracked separately, so downstream
// code keeps full precision on whichever sector is nearly empty
struct LaborSplit {
    double l;           // share of labor on enclosed land
    double one_minus_l; // share on customary land
    double logit;       // log(l/(1-l)), reusable as a warm start
};

/* Labor share on enclosed land at enclosure level t, found by bisecting the
 * worker indifference condition in log-odds space:
 *
 *   w_e(l) = w_c(l) + (1-mu) * customary land income per customary worker
 *
 * The left side falls in l and the right side rises, so the gap is strictly
 * decreasing and the root unique. `warm_logit`, when given, seeds a narrow
 * bracket around the previous root; sweeps over t get each solve almost for
 * free that way.
 */
inline LaborSplit indifference_labor_split(const Environment& env, double t,
                                           double* warm_logit = nullptr) {
    if (t <= 0.0) return {0.0, 1.0, -std::numeric_limits<double>::infinity()};
    if (t >= 1.0) return {1.0, 0.0, std::numeric_limits<double>::infinity()};
    auto gap = [&](double l, double one_minus_l) {
        const MarginalProducts e = marginal_products(env, env.theta, t, l);
        const MarginalProducts c = marginal_products(env, 1.0, 1.0 - t, one_minus_l);
        const double land_income_per_worker =
            c.mp_land * (1.0 - t) / (one_minus_l * env.lbar);
        return e.mp_labor - (c.mp_labor + (1.0 - env.mu) * land_income_per_worker);
    };
    auto gap_at = [&](double x) {
        return gap(1.0 / (1.0 + std::exp(-x)), 1.0 / (1.0 + std::exp(x)));
    };
    double lo = -620.0, hi = 620.0;
    if (warm_logit != nullptr && std::isfinite(*warm_logit)) {
        double wlo = std::max(lo, *warm_logit - 0.5);
        double whi = std::min(hi, *warm_logit + 0.5);
        double step = 0.5;
        while (!(gap_at(wlo) > 0.0 && gap_at(whi) <= 0.0) && (wlo > lo || whi < hi)) {
            wlo = std::max(lo, wlo - step);
            whi = std::min(hi, whi + step);
            step *= 2.0;
        }
        if (gap_at(wlo) > 0.0 && gap_at(whi) <= 0.0) {
            lo = wlo;
            hi = whi;
        }
    }
    for (int i = 0; i < 300 && hi - lo > 1e-13; ++i) {
        const double x = 0.5 * (lo + hi);
        (gap_at(x) > 0.0 ? lo : hi) = x;
    }
    const double x = 0.5 * (lo + hi);
    if (warm_logit != nullptr) *warm_logit = x;
    return {1.0 / (1.0 + std::exp(-x)), 1.0 / (1.0 + std::exp(x)), x};
}

inline double indifference_labor(const Environment& env, double t) {
    return indifference_labor_split(env, t).l;
}

// private gain from enclosing at aggregate level t, from raw marginal
// products: enclosed land rent less the levy on customary rent and the
// enclosure cost; t clamped just inside (0,1) so corner calls are usable
inline double entry_gain_raw(const Environment& env, double t, double* warm_logit = nullptr) {
    const double tc = std::clamp(t, 1e-12, 1.0 - 1e-12);
    const LaborSplit s = indifference_labor_split(env, tc, warm_logit);
    const double r = marginal_products(env, env.theta, tc, s.l).mp_land;
    const double rc = marginal_products(env, 1.0, 1.0 - tc, s.one_minus_l).mp_land;
    return r - env.tau * rc - env.c;
}

struct AgentSimConfig {
    int n_agents = 200;
    int max_rounds = 0; // 0 means 10 * n_agents
    std::uint64_t seed = 12345;
    double initial_enclosed = 0.0; // starting fraction of enclosers
    bool random_order = true;      // shuffle agent order every round

    void validate() const {
        if (n_agents < 2)
            throw std::invalid_argument("n_agents = " + std::to_string(n_agents) +
                                        ", must be at least 2");
        if (!(initial_enclosed >= 0.0 && initial_enclosed <= 1.0))
            throw std::invalid_argument("initial_enclosed = " +
                                        std::to_string(initial_enclosed) +
                                        ", must be in [0,1]");
        if (max_rounds < 0)
            throw std::invalid_argument("max_rounds must be non-negative");
    }
};

struct OracleReport {
    double t_e;          // enclosed fraction at the stopping point
    int rounds;          // full passes executed
    bool converged;      // a pass with zero switches occurred
    bool nash_verified;  // no agent gains from a unilateral deviation
    std::uint64_t seed;  // echo of the RNG seed used
};

/* Asynchronous best-response dynamics over n discrete landowners. Each agent
 * encloses iff the gain evaluated at the enclosure level including itself is
 * strictly positive. Gains depend on play only through the count of
 * enclosers, so they are memoized per count; a full run costs at most
 * n_agents+1 labor solves regardless of round count.
 */
inline OracleReport best_response_dynamics(const Environment& env,
                                           const AgentSimConfig& cfg = {}) {
    env.validate();
    cfg.validate();
    const int n = cfg.n_agents;
    const int rounds_cap = cfg.max_rounds > 0 ? cfg.max_rounds : 10 * n;
    std::vector<double> gain_at_count(static_cast<std::size_t>(n) + 1,
                                      std::numeric_limits<double>::quiet_NaN());
    auto gain = [&](int k) {
        double& slot = gain_at_count[static_cast<std::size_t>(k)];
        if (std::isnan(slot)) slot = entry_gain_raw(env, static_cast<double>(k) / n);
        return slot;
    };
    std::vector<char> enclosed(static_cast<std::size_t>(n), 0);
    int count = static_cast<int>(std::lround(cfg.initial_enclosed * n));
    std::fill(enclosed.begin(), enclosed.begin() + count, char(1));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::mt19937_64 rng(cfg.seed);

    OracleReport rep{};
    rep.seed = cfg.seed;
    rep.converged = false;
    int rounds = 0;
    while (rounds < rounds_cap) {
        if (cfg.random_order) std::shuffle(order.begin(), order.end(), rng);
        int switches = 0;
        for (int idx : order) {
            char& mine = enclosed[static_cast<std::size_t>(idx)];
            const int others = count - mine;
            const char want = gain(others + 1) > 0.0 ? 1 : 0;
            if (want != mine) {
                count += want - mine;
                mine = want;
                ++switches;
            }
        }
        ++rounds;
        if (switches == 0) {
            rep.converged = true;
            break;
        }
    }
    rep.rounds = rounds;
    rep.t_e = static_cast<double>(count) / n;
    rep.nash_verified = (count == 0 || gain(count) >= 0.0) &&
                        (count == n || gain(count + 1) <= 0.0);
    return rep;
}

enum class Objective { FirstBest, SecondBest, Monopoly };

struct GridOptimum {
    double t_e;   // maximizing enclosure level on the grid
    double l_e;   // labor allocation at that point
    double value; // objective value there
};

/* Dense grid maximization. FirstBest scans (t, l) jointly with the powers of
 * each axis hoisted out of the inner loop; SecondBest and Monopoly scan t
 * only, resolving labor from the indifference condition with a warm start
 * carried across the sweep.
 */
inline GridOptimum grid_search_optimum(const Environment& env, Objective objective,
                                       double step = 1e-3) {
    env.validate();
    if (!(step > 0.0 && step <= 0.01))
        throw std::invalid_argument("step = " + std::to_string(step) +
                                    ", must be in (0, 0.01]");
    const int n = static_cast<int>(std::lround(1.0 / step));
    const double a = env.alpha;
    const double scale = env.A * std::pow(env.lbar, a);
    GridOptimum best{0.0, 0.0, -std::numeric_limits<double>::infinity()};

    if (objective == Objective::FirstBest) {
        std::vector<double> land_e(static_cast<std::size_t>(n) + 1);
        std::vector<double> land_c(static_cast<std::size_t>(n) + 1);
        std::vector<double> lab_e(static_cast<std::size_t>(n) + 1);
        std::vector<double> lab_c(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            const double x = static_cast<double>(i) / n;
            land_e[static_cast<std::size_t>(i)] = std::pow(x, 1.0 - a);
            land_c[static_cast<std::size_t>(i)] = std::pow(1.0 - x, 1.0 - a);
            lab_e[static_cast<std::size_t>(i)] = std::pow(x, a);
            lab_c[static_cast<std::size_t>(i)] = std::pow(1.0 - x, a);
        }
        for (int i = 0; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            const double cost = env.c * t;
            for (int j = 0; j <= n; ++j) {
                const double v = scale * (env.theta * land_e[static_cast<std::size_t>(i)] *
                                              lab_e[static_cast<std::size_t>(j)] +
                                          land_c[static_cast<std::size_t>(i)] *
                                              lab_c[static_cast<std::size_t>(j)]) -
                                 cost;
                if (v > best.value) best = {t, static_cast<double>(j) / n, v};
            }
        }
        return best;
    }

    double warm = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const LaborSplit s = indifference_labor_split(env, t, i > 0 && i < n ? &warm : nullptr);
        double v;
        if (objective == Objective::SecondBest) {
            v = output_per_land(env, env.theta, t, s.l) +
                output_per_land(env, 1.0, 1.0 - t, s.one_minus_l) - env.c * t;
        } else {
            if (i == 0) {
                v = 0.0;
            } else {
                const double r = marginal_products(env, env.theta, t, s.l).mp_land;
                v = (r - env.c) * t;
            }
        }
        if (v > best.value) best = {t, s.l, v};
    }
    return best;
}

/* Land endowment at which the population-mean entry gain over t in [0,1]
 * crosses zero: the risk-dominance selection cutoff, computed here by
 * adaptive quadrature plus root bracketing rather than from the closed form.
 * The integrand's endpoint limits are finite but involve 0^0-style corners,
 * so the integral runs on [delta, 1-delta] and the two trimmed strips enter
 * as rectangles; with delta = 1e-9 the truncation error is far below the
 * quadrature tolerance.
 */
inline double integral_root_cutoff(const Environment& env) {
    env.validate();
    if (!(composite(env).lambda_mu < 1.0))
        throw std::domain_error("risk-dominance cutoff is defined only under strategic "
                                "complements (labor-pull index below 1)");
    const double delta = 1e-9;
    auto mean_gain = [&](double lbar) {
        Environment e = env;
        e.lbar = lbar;
        double warm = 0.0;
        auto f = [&](double t) { return entry_gain_raw(e, t, &warm); };
        const double body = integrate(f, delta, 1.0 - delta, 1e-10);
        return body + delta * (f(delta) + f(1.0 - delta));
    };
    auto [lo, hi] = expand_bracket(mean_gain, 0.5 * env.lbar, 2.0 * env.lbar);
    return bisect(mean_gain, lo, hi, 1e-11);
}

} // namespace enclose
