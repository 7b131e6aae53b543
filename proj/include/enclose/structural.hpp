#pragma once
/* structural.hpp -- three-sector extension with a manufacturing outside option.
 *
 * Adds a constant-returns manufacturing sector G(K, L) = A_m K^(1-beta) L^beta
 * whose output trades at relative price p against the agricultural good and
 * whose capital stock is fixed at k_bar per worker of the total endowment.
 * Labor now splits three ways; wage equalization pins the manufacturing share
 * l_m jointly with the agricultural mobility condition. Posed on the
 * mu = tau = 0 benchmark.
 */

#include <cmath>
#include <stdexcept>

#include "environment.hpp"
#include "numeric.hpp"
#include "regime.hpp"

namespace enclose {

struct ManufacturingParams {
    double p = 1.0;     // relative price of the manufactured good
    double beta = 0.5;  // labor exponent in manufacturing
    double A_m = 1.0;   // manufacturing TFP
    double k_bar = 1.0; // capital per worker of the endowment

    void validate() const {
        auto bad = [](const char* field, double v, const char* need) {
            throw std::invalid_argument(std::string(field) + " = " + std::to_string(v) +
                                        ", must be " + need);
        };
        if (!(p > 0.0) || !std::isfinite(p)) bad("p", p, "positive and finite");
        if (!(beta > 0.0 && beta < 1.0)) bad("beta", beta, "in (0,1)");
        if (!(A_m > 0.0) || !std::isfinite(A_m)) bad("A_m", A_m, "positive and finite");
        if (!(k_bar > 0.0) || !std::isfinite(k_bar)) bad("k_bar", k_bar, "positive and finite");
    }
};

struct ThreeSectorAllocation {
    double t_e;  // enclosed land share (echo of the input)
    double l_m;  // labor share in manufacturing
    double l_e;  // labor share on enclosed land
    double wage; // common wage across all three uses
    double output_enclosed;      // per unit land, agricultural units
    double output_customary;     // per unit land
    double output_manufacturing; // per unit land, value at price p
};

/* Given t, agricultural mobility still yields l_e = lambda0*t*(1-l_m)/D with
 * D = 1+(lambda0-1)*t, so the only unknown is l_m, pinned by
 *   p*beta*A_m*(k_bar/l_m)^(1-beta) = A*lbar^(alpha-1)*(D/(1-l_m))^(1-alpha).
 * The left side falls in l_m, the right side rises, so the root is unique;
 * it is bisected on the log-odds of l_m to keep resolution at both ends
 * (l_m shrinks like p^(1/(1-beta)) as manufacturing prices collapse).
 */
inline ThreeSectorAllocation three_sector_equilibrium(const Environment& env,
                                                      const ManufacturingParams& mfg,
                                                      double t_e) {
    env.validate();
    mfg.validate();
    if (env.mu != 0.0 || env.tau != 0.0)
        throw std::domain_error("three-sector equilibrium is defined for mu = tau = 0");
    if (!(t_e >= 0.0 && t_e < 1.0))
        throw std::domain_error("three-sector equilibrium needs t_e in [0,1): an empty "
                                "customary sector has no interior wage");
    const double a = env.alpha;
    const double lam = composite(env).lambda0;
    const double d = 1.0 + (lam - 1.0) * t_e;
    const double mfg_scale = mfg.p * mfg.beta * mfg.A_m * std::pow(mfg.k_bar, 1.0 - mfg.beta);
    const double ag_scale = env.A * std::pow(env.lbar, a - 1.0) * std::pow(d, 1.0 - a);
    auto gap = [&](double lm, double one_minus_lm) {
        return mfg_scale * std::pow(lm, mfg.beta - 1.0) -
               ag_scale * std::pow(one_minus_lm, a - 1.0);
    };
    double lo = -620.0, hi = 620.0;
    for (int i = 0; i < 300 && hi - lo > 1e-13; ++i) {
        const double x = 0.5 * (lo + hi);
        const double lm = 1.0 / (1.0 + std::exp(-x));
        const double oml = 1.0 / (1.0 + std::exp(x));
        (gap(lm, oml) > 0.0 ? lo : hi) = x;
    }
    const double x = 0.5 * (lo + hi);
    ThreeSectorAllocation out;
    out.t_e = t_e;
    out.l_m = 1.0 / (1.0 + std::exp(-x));
    const double oml = 1.0 / (1.0 + std::exp(x));
    out.l_e = lam * t_e * oml / d;
    out.wage = ag_scale * std::pow(oml, a - 1.0);
    const double l_c = oml * (1.0 - t_e) / d; // remaining agricultural labor
    out.output_enclosed = output_per_land(env, env.theta, t_e, out.l_e);
    out.output_customary = output_per_land(env, 1.0, 1.0 - t_e, l_c);
    out.output_manufacturing =
        mfg.p * mfg.A_m * std::pow(mfg.k_bar, 1.0 - mfg.beta) * std::pow(out.l_m, mfg.beta) *
        env.lbar;
    return out;
}

// private return to enclosing at aggregate t: marginal product of enclosed
// land at the three-sector labor allocation; continuous down to t = 0
inline double enclosure_return_three_sector(const Environment& env,
                                            const ManufacturingParams& mfg, double t_e) {
    const ThreeSectorAllocation eq = three_sector_equilibrium(env, mfg, t_e);
    const double lam = composite(env).lambda0;
    const double d = 1.0 + (lam - 1.0) * t_e;
    const double ratio = lam * (1.0 - eq.l_m) / d; // l_e/t_e without the 0/0 at t=0
    return env.theta * (1.0 - env.alpha) * env.A * std::pow(env.lbar, env.alpha) *
           std::pow(ratio, env.alpha);
}

struct ThreeSectorEquilibrium {
    Regime regime = Regime::Unresolved;
    double t_e = 0.0; // for Multiple this is the interior tipping point
    ThreeSectorAllocation allocation;
};

/* Enclosure equilibrium with the manufacturing outside option: the same
 * endpoint-sign logic as the two-sector classifier, applied to the
 * three-sector private return. Assumes the return crosses c at most once,
 * as in the two-sector model; with a declining return the interior root is
 * the stable equilibrium, with a rising one it is the tipping point between
 * the two corner equilibria. The t = 1 corner is evaluated just inside,
 * where the customary wage is still defined.
 */
inline ThreeSectorEquilibrium three_sector_enclosure_equilibrium(const Environment& env,
                                                                 const ManufacturingParams& mfg) {
    const double hi = 1.0 - 1e-9;
    auto gain = [&](double t) { return enclosure_return_three_sector(env, mfg, t) - env.c; };
    const double g0 = gain(0.0);
    const double g1 = gain(hi);
    ThreeSectorEquilibrium eq;
    if (g0 <= 0.0 && g1 <= 0.0) {
        eq.regime = Regime::NoEnclosure;
        eq.t_e = 0.0;
    } else if (g0 >= 0.0 && g1 >= 0.0) {
        eq.regime = Regime::Full;
        eq.t_e = 1.0;
    } else {
        eq.t_e = bisect(gain, 0.0, hi);
        eq.regime = g0 > 0.0 ? Regime::Partial : Regime::Multiple;
    }
    eq.allocation = three_sector_equilibrium(env, mfg, std::min(eq.t_e, hi));
    return eq;
}

} // namespace enclose
