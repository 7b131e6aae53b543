#pragma once
/* planner.hpp -- first-best and second-best enclosure problems.
 *
 * Both planners choose the enclosed land share t to maximize aggregate
 * output net of enclosure costs. The first-best planner also assigns labor
 * (marginal products equalized across sectors); the second-best planner
 * must live with the free-mobility labor response, under which workers
 * equate their full take-home (average product on the commons) instead.
 * Along either labor rule the two-sector output collapses to a one-line
 * expression in t through the matching labor-pull index.
 */

#include <optional>

#include "environment.hpp"
#include "numeric.hpp"
#include "regime.hpp"

namespace enclose {

struct PlannerSolution {
    Regime regime = Regime::Unresolved;
    double t_e = 0.0;        // chosen enclosed land share
    double l_e = 0.0;        // labor share on enclosed land at t_e
    double gross_output = 0.0;
    double net_output = 0.0; // gross_output - c * t_e
};

// labor assignment equating marginal products: l = lambda1*t / (1 + (lambda1-1)*t)
inline double first_best_labor(const Environment& env, double t_e) {
    const double lam = composite(env).lambda1;
    return lam * t_e / (1.0 + (lam - 1.0) * t_e);
}

// output per unit land with labor assigned first-best: [1+(lambda1-1)t]^(1-alpha) * A * lbar^alpha
inline double first_best_output(const Environment& env, double t_e) {
    const double lam = composite(env).lambda1;
    return std::pow(1.0 + (lam - 1.0) * t_e, 1.0 - env.alpha) * env.A *
           std::pow(env.lbar, env.alpha);
}

inline double first_best_output_slope(const Environment& env, double t_e) {
    const double lam = composite(env).lambda1;
    return (1.0 - env.alpha) * (lam - 1.0) *
           std::pow(1.0 + (lam - 1.0) * t_e, -env.alpha) * env.A * std::pow(env.lbar, env.alpha);
}

/* Output per unit land under the free-mobility labor response. The response
 * index is lambda_mu (lambda0 in the mu = 0 benchmark), giving
 *   [theta*lambda^alpha*t + (1-t)] / (1+(lambda-1)t)^alpha * A * lbar^alpha.
 * Concave in t when lambda > 1, convex when lambda < 1, linear at 1.
 */
inline double second_best_output(const Environment& env, double t_e) {
    const double lam = composite(env).lambda_mu;
    const double d = 1.0 + (lam - 1.0) * t_e;
    const double n = env.theta * std::pow(lam, env.alpha) * t_e + (1.0 - t_e);
    return n * std::pow(d, -env.alpha) * env.A * std::pow(env.lbar, env.alpha);
}

inline double second_best_output_slope(const Environment& env, double t_e) {
    const double lam = composite(env).lambda_mu;
    const double d = 1.0 + (lam - 1.0) * t_e;
    const double n = env.theta * std::pow(lam, env.alpha) * t_e + (1.0 - t_e);
    const double nprime = env.theta * std::pow(lam, env.alpha) - 1.0;
    return (nprime * d - env.alpha * n * (lam - 1.0)) * std::pow(d, -env.alpha - 1.0) * env.A *
           std::pow(env.lbar, env.alpha);
}

struct FirstBestThresholds {
    double start_enclosure; // lbar where the slope at t=0 meets c
    double full_enclosure;  // lbar where the slope at t=1 meets c; = lambda1 * start
};

inline FirstBestThresholds first_best_thresholds(const Environment& env) {
    const double lam = composite(env).lambda1;
    if (!(env.theta > 1.0))
        throw std::domain_error("first-best thresholds need theta > 1 (enclosure never pays)");
    const double l0 = std::pow(env.c / (env.A * (1.0 - env.alpha) * (lam - 1.0)), 1.0 / env.alpha);
    return {l0, lam * l0};
}

inline PlannerSolution first_best_solve(const Environment& env) {
    const double lam = composite(env).lambda1;
    const double none = first_best_output(env, 0.0);
    PlannerSolution s;
    if (lam <= 1.0) { // enclosure weakly shrinks output and costs c
        s = {Regime::NoEnclosure, 0.0, 0.0, none, none};
        return s;
    }
    const double slope0 = first_best_output_slope(env, 0.0);
    const double slope1 = first_best_output_slope(env, 1.0);
    if (slope0 <= env.c) {
        s = {Regime::NoEnclosure, 0.0, 0.0, none, none};
    } else if (slope1 >= env.c) {
        const double full = first_best_output(env, 1.0);
        s = {Regime::Full, 1.0, 1.0, full, full - env.c};
    } else {
        // interior: slope = c is one power relation; solve it directly, then
        // polish with bisection in case of rounding at extreme exponents
        const double dstar = std::pow(
            (1.0 - env.alpha) * (lam - 1.0) * env.A * std::pow(env.lbar, env.alpha) / env.c,
            1.0 / env.alpha);
        double t = (dstar - 1.0) / (lam - 1.0);
        auto gap = [&](double x) { return first_best_output_slope(env, x) - env.c; };
        const double lo = std::max(0.0, t - 1e-3);
        const double hi = std::min(1.0, t + 1e-3);
        if (std::abs(gap(t)) > 1e-12) {
            if ((gap(lo) > 0.0) != (gap(hi) > 0.0))
                t = bisect(gap, lo, hi, 1e-12);
            else
                t = bisect(gap, 0.0, 1.0, 1e-12);
        }
        const double gross = first_best_output(env, t);
        s = {Regime::Partial, t, first_best_labor(env, t), gross, gross - env.c * t};
    }
    return s;
}

struct SecondBestThresholds {
    // lambda0 <= 1 (convex objective): all-or-nothing switch point
    std::optional<double> switch_full;
    // lambda0 >= 1 (concave objective): interior band edges
    std::optional<double> start_enclosure;
    std::optional<double> full_enclosure;
};

// benchmark (mu = 0) closed forms; the branch is picked by lambda0 vs 1 and
// all three coincide at the knife edge.
inline SecondBestThresholds second_best_thresholds(const Environment& env) {
    const double lam = composite(env).lambda0;
    SecondBestThresholds th;
    if (lam <= 1.0 && env.theta > 1.0)
        th.switch_full = std::pow(env.c / (env.A * (env.theta - 1.0)), 1.0 / env.alpha);
    if (lam >= 1.0) {
        th.start_enclosure =
            std::pow(env.c * env.alpha /
                         (env.A * (1.0 - env.alpha) * (lam * (1.0 + env.alpha) - env.alpha)),
                     1.0 / env.alpha);
        th.full_enclosure =
            std::pow(env.c / (env.theta * env.A * (1.0 - env.alpha)), 1.0 / env.alpha);
    }
    return th;
}

inline PlannerSolution second_best_solve(const Environment& env) {
    const double lam = composite(env).lambda_mu;
    const double none = second_best_output(env, 0.0);
    PlannerSolution s;
    if (lam <= 1.0) {
        // convex (or linear) objective: the best point is a corner
        const double full_net = second_best_output(env, 1.0) - env.c;
        if (full_net >= none) {
            s = {Regime::Full, 1.0, 1.0, full_net + env.c, full_net};
        } else {
            s = {Regime::NoEnclosure, 0.0, 0.0, none, none};
        }
        return s;
    }
    const double slope0 = second_best_output_slope(env, 0.0);
    const double slope1 = second_best_output_slope(env, 1.0);
    if (slope0 <= env.c) {
        s = {Regime::NoEnclosure, 0.0, 0.0, none, none};
    } else if (slope1 >= env.c) {
        const double full = second_best_output(env, 1.0);
        s = {Regime::Full, 1.0, 1.0, full, full - env.c};
    } else {
        const double t = bisect(
            [&](double x) { return second_best_output_slope(env, x) - env.c; }, 0.0, 1.0, 1e-12);
        const double d = 1.0 + (lam - 1.0) * t;
        const double gross = second_best_output(env, t);
        s = {Regime::Partial, t, lam * t / d, gross, gross - env.c * t};
    }
    return s;
}

} // namespace enclose
