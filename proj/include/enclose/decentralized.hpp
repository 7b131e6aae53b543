#pragma once
/* decentralized.hpp -- free-mobility equilibrium of the enclosure game.
 *
 * Landholders decide individually whether to enclose; each is small, so the
 * private return to enclosing is the rental rate at the aggregate enclosure
 * rate t. Labor moves freely: a worker on the commons earns their average
 * product (wage plus possession rent), a mover keeps fraction mu of that
 * rent, so the equilibrium labor response carries the lambda_mu index. An
 * encloser may also owe compensation tau per unit land at the customary
 * rental rate. The sign of d(rent)/dt decides whether enclosure decisions
 * are strategic substitutes (rent falls as others enclose) or complements
 * (rent rises), which is what splits the equilibrium landscape below.
 */

#include <cmath>
#include <limits>
#include <optional>

#include "environment.hpp"
#include "numeric.hpp"
#include "planner.hpp"
#include "regime.hpp"

namespace enclose {

enum class StrategicNature { Substitutes, Complements, KnifeEdge };

inline const char* to_string(StrategicNature n) {
    switch (n) {
        case StrategicNature::Substitutes: return "substitutes";
        case StrategicNature::Complements: return "complements";
        default: return "knife_edge";
    }
}

inline StrategicNature strategic_nature(const Environment& env) {
    const double lam = composite(env).lambda_mu;
    if (std::abs(lam - 1.0) <= 1e-12) return StrategicNature::KnifeEdge;
    return lam > 1.0 ? StrategicNature::Substitutes : StrategicNature::Complements;
}

// equilibrium labor share on enclosed land given aggregate t
inline double labor_response(const Environment& env, double t_e) {
    const double lam = composite(env).lambda_mu;
    return lam * t_e / (1.0 + (lam - 1.0) * t_e);
}

inline double labor_response_slope(const Environment& env, double t_e) {
    const double lam = composite(env).lambda_mu;
    const double d = 1.0 + (lam - 1.0) * t_e;
    return lam / (d * d);
}

// rental rate earned per unit of enclosed land (marginal product of enclosed
// land at the equilibrium labor allocation); monotone in t with sign(dr/dt)
// = sign(1 - lambda_mu)
inline double rental_rate(const Environment& env, double t_e) {
    const double lam = composite(env).lambda_mu;
    const double d = 1.0 + (lam - 1.0) * t_e;
    return env.theta * (1.0 - env.alpha) * env.A * std::pow(env.lbar, env.alpha) *
           std::pow(lam / d, env.alpha);
}

struct CustomaryRent {
    double value;
    bool empty_sector_limit; // true at t = 1, where the value is the t->1 limit
};

// marginal product of customary land at the equilibrium labor allocation
inline CustomaryRent customary_rent(const Environment& env, double t_e) {
    const double lam = composite(env).lambda_mu;
    const double d = 1.0 + (lam - 1.0) * t_e;
    return {(1.0 - env.alpha) * env.A * std::pow(env.lbar, env.alpha) * std::pow(d, -env.alpha),
            t_e >= 1.0};
}

// market wage for labor on enclosed land (its marginal product); at t = 0
// this is the limit along the response path
inline double wage_enclosed(const Environment& env, double t_e) {
    const double lam = composite(env).lambda_mu;
    const double d = 1.0 + (lam - 1.0) * t_e;
    return env.theta * env.alpha * env.A * std::pow(env.lbar, env.alpha - 1.0) *
           std::pow(d / lam, 1.0 - env.alpha);
}

// bare wage on the commons (marginal product net of the possession rent)
inline double wage_customary(const Environment& env, double t_e) {
    const double lam = composite(env).lambda_mu;
    const double d = 1.0 + (lam - 1.0) * t_e;
    return env.alpha * env.A * std::pow(env.lbar, env.alpha - 1.0) * std::pow(d, 1.0 - env.alpha);
}

// total labor take-home per unit land (wages plus the possession rents
// workers collect on the commons); continuous on [0,1]
inline double labor_income(const Environment& env, double t_e) {
    const double lam = composite(env).lambda_mu;
    const double d = 1.0 + (lam - 1.0) * t_e;
    return env.alpha * env.theta * env.A * std::pow(env.lbar, env.alpha) *
           std::pow(d / lam, 1.0 - env.alpha);
}

// private gain from enclosing one more unit of land at aggregate t
inline double entry_gain(const Environment& env, double t_e) {
    return rental_rate(env, t_e) - env.tau * customary_rent(env, t_e).value - env.c;
}

struct DecentralizedThresholds {
    double entry_at_none; // lbar where the first encloser breaks even (r(0) = c)
    double entry_at_full; // lbar where the last encloser breaks even (r(1) = c)
};

// benchmark (mu = tau = 0) closed forms. Under substitutes these bound the
// partial band from below/above; under complements the order flips and they
// become dominance bounds instead.
inline DecentralizedThresholds decentralized_thresholds(const Environment& env) {
    const double lam0 = composite(env).lambda0;
    const double at_full =
        std::pow(env.c / (env.theta * env.A * (1.0 - env.alpha)), 1.0 / env.alpha);
    return {at_full / lam0, at_full};
}

// same two loci for general mu/tau, root-found in lbar from the entry gain
// at the corners; empty when entry never pays (theta*lambda^alpha <= tau)
inline std::optional<DecentralizedThresholds> entry_thresholds(const Environment& env) {
    const double lam = composite(env).lambda_mu;
    if (env.theta * std::pow(lam, env.alpha) - env.tau <= 0.0) return std::nullopt;
    auto root_at = [&](double t) {
        auto f = [&](double lb) {
            Environment e = env;
            e.lbar = lb;
            return entry_gain(e, t);
        };
        auto [lo, hi] = expand_bracket(f, 0.5, 2.0);
        return bisect(f, lo, hi, 1e-13);
    };
    return DecentralizedThresholds{root_at(0.0), root_at(1.0)};
}

/* Risk-dominance cutoff in lbar. Under complements both corners can be
 * self-enforcing; an encloser holding the uniform (Laplacian) belief over
 * the aggregate is indifferent when the mean entry gain over t in [0,1] is
 * zero, which integrates in closed form. Above the cutoff the enclosing
 * corner is risk dominant. Defined under complements only.
 */
inline double global_games_cutoff(const Environment& env) {
    const double lam = composite(env).lambda_mu;
    const double a = env.alpha;
    if (lam >= 1.0)
        throw std::domain_error(
            "risk-dominance cutoff needs strategic complements (theta below the mu-adjusted "
            "knife edge)");
    const double pull = env.theta * std::pow(lam, a) - env.tau;
    if (pull <= 0.0)
        throw std::domain_error("risk-dominance cutoff undefined: entry never pays (tau too "
                                "high for this theta)");
    // mean of (1+(lam-1)t)^(-a) over [0,1] equals (lam^(1-a)-1)/((1-a)(lam-1))
    const double mean_d = (std::pow(lam, 1.0 - a) - 1.0) / ((1.0 - a) * (lam - 1.0));
    return std::pow(env.c / (env.A * (1.0 - a) * pull * mean_d), 1.0 / a);
}

struct EquilibriumReport {
    Regime regime = Regime::Unresolved;
    StrategicNature nature = StrategicNature::KnifeEdge;
    double t_e = 0.0;       // equilibrium rate; the risk-dominant corner when Multiple
    Regime selected = Regime::Unresolved; // equals regime unless Multiple
    double unstable_t_e = std::numeric_limits<double>::quiet_NaN(); // interior tipping point
    std::optional<double> cutoff;         // risk-dominance cutoff when Multiple
    double l_e = 0.0;
    double wage = 0.0;
    double rent_enclosed = 0.0;
    double rent_customary = 0.0;
    bool rent_customary_is_limit = false;
    double labor_income = 0.0;
    double net_output = 0.0; // output along the response at t_e minus c*t_e
};

inline EquilibriumReport classify_equilibria(const Environment& env) {
    EquilibriumReport rep;
    rep.nature = strategic_nature(env);
    const double g0 = entry_gain(env, 0.0);
    const double g1 = entry_gain(env, 1.0);
    if (rep.nature == StrategicNature::KnifeEdge) {
        // entry gain is flat in t: everyone in or everyone out
        rep.regime = g0 >= 0.0 ? Regime::Full : Regime::NoEnclosure;
    } else if (rep.nature == StrategicNature::Substitutes) {
        if (g0 <= 0.0)
            rep.regime = Regime::NoEnclosure;
        else if (g1 >= 0.0)
            rep.regime = Regime::Full;
        else
            rep.regime = Regime::Partial;
    } else {
        // complements: the gain rises with t, so corners are the candidates
        if (g1 <= 0.0)
            rep.regime = Regime::NoEnclosure;
        else if (g0 >= 0.0)
            rep.regime = Regime::Full;
        else
            rep.regime = Regime::Multiple;
    }
    rep.selected = rep.regime;
    switch (rep.regime) {
        case Regime::NoEnclosure: rep.t_e = 0.0; break;
        case Regime::Full: rep.t_e = 1.0; break;
        case Regime::Partial:
            rep.t_e = bisect([&](double t) { return entry_gain(env, t); }, 0.0, 1.0, 1e-13);
            break;
        default: {
            rep.unstable_t_e =
                bisect([&](double t) { return entry_gain(env, t); }, 0.0, 1.0, 1e-13);
            const double cut = global_games_cutoff(env);
            rep.cutoff = cut;
            rep.selected = env.lbar >= cut ? Regime::Full : Regime::NoEnclosure;
            rep.t_e = rep.selected == Regime::Full ? 1.0 : 0.0;
            break;
        }
    }
    rep.l_e = labor_response(env, rep.t_e);
    rep.wage = wage_enclosed(env, rep.t_e);
    rep.rent_enclosed = rental_rate(env, rep.t_e);
    const CustomaryRent rc = customary_rent(env, rep.t_e);
    rep.rent_customary = rc.value;
    rep.rent_customary_is_limit = rc.empty_sector_limit;
    rep.labor_income = labor_income(env, rep.t_e);
    rep.net_output = second_best_output(env, rep.t_e) - env.c * rep.t_e;
    return rep;
}

/* Marginal social accounting of one more unit of enclosure at aggregate t,
 * holding the decentralized labor response (mu = tau = 0 benchmark):
 *   net_private     what the encloser pockets, rent minus cost
 *   external_cost   customary rent destroyed on the enclosed plot
 *   external_benefit output change from the labor the enclosure pulls in,
 *                    valued at the sectoral marginal-product wedge
 * The three sum exactly to the slope of second_best_output minus c. The
 * wedge is positive at every interior allocation (commons overcrowding), so
 * external_benefit > 0 whenever the response slope is.
 */
struct ExternalityTerms {
    double net_private;
    double external_cost;
    double external_benefit;
    double total;
};

inline ExternalityTerms externality_decomposition(const Environment& env, double t_e) {
    if (env.mu != 0.0 || env.tau != 0.0)
        throw std::domain_error("externality decomposition is defined for mu = tau = 0");
    if (!(t_e > 0.0 && t_e < 1.0))
        throw std::domain_error("externality decomposition needs interior t_e in (0,1)");
    const double a = env.alpha;
    const double scale = env.A * std::pow(env.lbar, a);
    const double l = labor_response(env, t_e);
    ExternalityTerms terms;
    terms.net_private = rental_rate(env, t_e) - env.c;
    terms.external_cost = -(1.0 - a) * std::pow((1.0 - l) / (1.0 - t_e), a) * scale;
    const double wedge = env.theta * a * std::pow(t_e / l, 1.0 - a) -
                         a * std::pow((1.0 - t_e) / (1.0 - l), 1.0 - a);
    terms.external_benefit = wedge * scale * labor_response_slope(env, t_e);
    terms.total = terms.net_private + terms.external_cost + terms.external_benefit;
    return terms;
}

} // namespace enclose
