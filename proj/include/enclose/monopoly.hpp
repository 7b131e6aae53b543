#pragma once
/* monopoly.hpp -- a single enclosure syndicate that internalizes the rent.
 *
 * The syndicate picks the aggregate enclosure rate itself and collects
 * (rent(t) - c) * t, so unlike atomistic enclosers it feels how its own
 * expansion moves the rental rate. The model is posed on the benchmark
 * economy: mu and tau are zeroed before solving.
 */

#include <optional>

#include "decentralized.hpp"
#include "environment.hpp"
#include "numeric.hpp"
#include "regime.hpp"

namespace enclose {

namespace detail {
inline Environment benchmark(const Environment& env) {
    Environment b = env;
    b.mu = 0.0;
    b.tau = 0.0;
    return b;
}
} // namespace detail

inline double monopoly_profit(const Environment& env, double t_e) {
    const Environment b = detail::benchmark(env);
    return (rental_rate(b, t_e) - b.c) * t_e;
}

// d/dt of profit: rent + rent' * t - c, with rent'/rent = -alpha*(lambda0-1)/D
inline double monopoly_profit_slope(const Environment& env, double t_e) {
    const Environment b = detail::benchmark(env);
    const double lam = composite(b).lambda0;
    const double d = 1.0 + (lam - 1.0) * t_e;
    const double r = rental_rate(b, t_e);
    return r * (1.0 - env.alpha * (lam - 1.0) * t_e / d) - b.c;
}

struct MonopolySolution {
    Regime regime = Regime::Unresolved;
    double t_e = 0.0;
    double profit = 0.0;
    double net_output = 0.0; // social accounting at the chosen t_e
};

inline MonopolySolution monopoly_solve(const Environment& env) {
    const Environment b = detail::benchmark(env);
    const double lam = composite(b).lambda0;
    MonopolySolution s;
    if (lam <= 1.0) {
        // rent is flat or rising in t, profit is convex: corner solution
        const double full = monopoly_profit(b, 1.0);
        if (full >= 0.0)
            s = {Regime::Full, 1.0, full, 0.0};
        else
            s = {Regime::NoEnclosure, 0.0, 0.0, 0.0};
    } else {
        const double s0 = monopoly_profit_slope(b, 0.0);
        const double s1 = monopoly_profit_slope(b, 1.0);
        if (s0 <= 0.0) {
            s = {Regime::NoEnclosure, 0.0, 0.0, 0.0};
        } else if (s1 >= 0.0) {
            s = {Regime::Full, 1.0, monopoly_profit(b, 1.0), 0.0};
        } else {
            /* The slope starts positive, ends negative, and its derivative
             * changes sign at most once (concave then convex in t), so the
             * bracketed root is the unique interior peak. The endpoint
             * comparison below is a guard, not a search.
             */
            const double t =
                bisect([&](double x) { return monopoly_profit_slope(b, x); }, 0.0, 1.0, 1e-13);
            const double at_root = monopoly_profit(b, t);
            const double at_full = monopoly_profit(b, 1.0);
            if (at_root >= 0.0 && at_root >= at_full)
                s = {Regime::Partial, t, at_root, 0.0};
            else if (at_full >= 0.0)
                s = {Regime::Full, 1.0, at_full, 0.0};
            else
                s = {Regime::NoEnclosure, 0.0, 0.0, 0.0};
        }
    }
    s.net_output = second_best_output(b, s.t_e) - b.c * s.t_e;
    return s;
}

struct MonopolyThresholds {
    // lambda0 <= 1: profit convex, all-or-nothing at the entry_at_full locus
    std::optional<double> switch_full;
    // lambda0 >= 1: interior band edges
    std::optional<double> start_enclosure;
    std::optional<double> full_enclosure;
    // A simplified closed form for full_enclosure that circulates alongside
    // the model but does not satisfy the profit first-order condition at
    // t = 1; reported so the discrepancy stays visible. Quoted at A = 1.
    std::optional<double> full_enclosure_variant;
};

inline MonopolyThresholds monopoly_thresholds(const Environment& env) {
    const Environment b = detail::benchmark(env);
    const double lam = composite(b).lambda0;
    const double a = b.alpha;
    MonopolyThresholds th;
    if (lam <= 1.0) th.switch_full = decentralized_thresholds(b).entry_at_full;
    if (lam >= 1.0) {
        th.start_enclosure = decentralized_thresholds(b).entry_at_none;
        th.full_enclosure = std::pow(
            b.c * lam / (b.theta * (1.0 - a) * b.A * (lam * (1.0 - a) + a)), 1.0 / a);
        th.full_enclosure_variant =
            std::pow(a * b.c / (1.0 - a) * lam / (lam * (1.0 - a) + a), 1.0 / a);
    }
    return th;
}

} // namespace enclose
