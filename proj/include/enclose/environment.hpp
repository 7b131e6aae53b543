#pragma once
/* environment.hpp -- primitives of the land-enclosure economy.
 *
 * One agricultural economy, two land regimes: an enclosed sector with TFP
 * premium theta and per-unit-land enclosure cost c, and an open customary
 * sector. Technology is Cobb-Douglas in land and labor with labor exponent
 * alpha. Everything downstream works with shares: t is the enclosed share of
 * land, l the share of labor working enclosed land, and output is reported
 * per unit of total land, which leaves the endowments in play only through
 * the labor/land ratio lbar.
 */

#include <cmath>
#include <stdexcept>
#include <string>

namespace enclose {

struct Environment {
    double A = 1.0;           // agricultural TFP scale
    double theta = 2.0;       // enclosed-sector TFP premium
    double lbar = 1.0;        // labor/land endowment ratio
    double alpha = 2.0 / 3.0; // labor exponent of the technology
    double c = 1.0;           // enclosure cost per unit land
    double mu = 0.0;          // share of customary possession rent kept by a mover
    double tau = 0.0;         // compensation paid per unit of enclosed land

    void validate() const;
};

/* Composite parameters. The two labor-pull indices are the enclosed/customary
 * labor-ratio factors implied by, respectively, the free-mobility equilibrium
 * (lambda0, workers equate average products) and the planner (lambda1,
 * workers equate marginal products). lambda_mu interpolates: a mover who
 * keeps fraction mu of their customary possession rent discounts the commons
 * by 1-mu*(1-alpha). theta_high marks the premium at which lambda0 = 1 and
 * the rental rate goes flat in t; theta_high_mu is its mu-adjusted analogue.
 */
struct CompositeParams {
    double lambda0;
    double lambda1;
    double lambda_mu;
    double theta_high;    // 1/alpha
    double theta_high_mu; // (1 - mu*(1-alpha))/alpha
};

inline CompositeParams composite(const Environment& env) {
    const double e = 1.0 / (1.0 - env.alpha);
    CompositeParams cp;
    cp.lambda0 = std::pow(env.alpha * env.theta, e);
    cp.lambda1 = std::pow(env.theta, e);
    cp.lambda_mu = std::pow(env.alpha * env.theta / (1.0 - env.mu * (1.0 - env.alpha)), e);
    cp.theta_high = 1.0 / env.alpha;
    cp.theta_high_mu = (1.0 - env.mu * (1.0 - env.alpha)) / env.alpha;
    return cp;
}

// output of one sector per unit of total land:
//   multiplier * A * t^(1-alpha) * (l*lbar)^alpha
// multiplier is 1 for the customary sector, theta for the enclosed one.
inline double output_per_land(const Environment& env, double multiplier, double t, double l) {
    return multiplier * env.A * std::pow(t, 1.0 - env.alpha) * std::pow(l * env.lbar, env.alpha);
}

struct MarginalProducts {
    double mp_land;  // per unit of the sector's land
    double mp_labor; // per worker in the sector
    double ap_labor; // average product per worker
};

// marginal/average products of one sector holding shares (t, l).
// Euler identity: ap_labor = mp_labor + mp_land * (t / (l*lbar)).
inline MarginalProducts marginal_products(const Environment& env, double multiplier,
                                          double t, double l) {
    const double a = env.alpha;
    const double land_per_worker = t / (l * env.lbar);
    MarginalProducts mp;
    mp.mp_land = multiplier * env.A * (1.0 - a) * std::pow(land_per_worker, -a);
    mp.mp_labor = multiplier * env.A * a * std::pow(land_per_worker, 1.0 - a);
    mp.ap_labor = multiplier * env.A * std::pow(land_per_worker, 1.0 - a);
    return mp;
}

inline void Environment::validate() const {
    auto bad = [](const std::string& field, double v, const std::string& need) {
        throw std::invalid_argument(field + " = " + std::to_string(v) + ", must be " + need);
    };
    if (!(A > 0.0) || !std::isfinite(A)) bad("A", A, "positive and finite");
    if (!(theta > 0.0) || !std::isfinite(theta)) bad("theta", theta, "positive and finite");
    if (!(lbar > 0.0) || !std::isfinite(lbar)) bad("lbar", lbar, "positive and finite");
    if (!(alpha > 0.0 && alpha < 1.0)) bad("alpha", alpha, "in (0,1)");
    if (!(c >= 0.0) || !std::isfinite(c)) bad("c", c, "nonnegative and finite");
    if (!(mu >= 0.0 && mu <= 1.0)) bad("mu", mu, "in [0,1]");
    if (!(tau >= 0.0 && tau <= 1.0)) bad("tau", tau, "in [0,1]");
}

} // namespace enclose
