#pragma once
/* regions.hpp -- regime maps over the (theta, lbar) parameter plane.
 *
 * Runs every requested solver on a rectangular grid (theta linear, lbar
 * log-spaced), labels each cell, and traces the closed-form threshold loci
 * across the theta axis as polylines. Cells also carry the welfare gap
 * between the constrained planner and the decentralized equilibrium, plus a
 * coarse efficiency comparison used for the over/under-enclosure maps.
 */

#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "decentralized.hpp"
#include "environment.hpp"
#include "monopoly.hpp"
#include "planner.hpp"
#include "regime.hpp"

namespace enclose {

struct SolverSet {
    bool first_best = true;
    bool second_best = true;
    bool decentralized = true;
    bool monopoly = true;

    bool any() const { return first_best || second_best || decentralized || monopoly; }
};

struct SweepSpec {
    double theta_min = 0.8;
    double theta_max = 3.0;
    int theta_steps = 100; // grid points, linear spacing
    double lbar_min = 0.05;
    double lbar_max = 20.0;
    int lbar_steps = 100;  // grid points, log spacing
    Environment base{};    // theta and lbar are overwritten cell by cell
    SolverSet solvers{};

    void validate() const {
        auto bad = [](const std::string& what) { throw std::invalid_argument(what); };
        if (theta_steps < 2 || lbar_steps < 2) bad("sweep needs at least 2 steps per axis");
        if (!(theta_min > 0.0 && theta_min < theta_max))
            bad("theta range must be positive and ordered, got [" + std::to_string(theta_min) +
                ", " + std::to_string(theta_max) + "]");
        if (!(lbar_min > 0.0 && lbar_min < lbar_max))
            bad("lbar range must be positive and ordered, got [" + std::to_string(lbar_min) +
                ", " + std::to_string(lbar_max) + "]");
        if (!solvers.any()) bad("sweep requests no solvers");
        Environment probe = base;
        probe.theta = theta_min;
        probe.lbar = lbar_min;
        probe.validate();
    }
};

// how the decentralized outcome compares with the constrained planner's
enum class Comparison {
    NotComputed,
    Aligned,             // same enclosure level up to tolerance
    Excessive,           // more enclosure than the planner would choose
    Insufficient,        // less enclosure, but some entry occurs
    CoordinationFailure, // no entry at all where the planner would enclose
};

inline const char* to_string(Comparison c) {
    switch (c) {
    case Comparison::NotComputed: return "not_computed";
    case Comparison::Aligned: return "aligned";
    case Comparison::Excessive: return "excessive";
    case Comparison::Insufficient: return "insufficient";
    case Comparison::CoordinationFailure: return "coordination_failure";
    }
    return "not_computed";
}

struct CellResult {
    double theta = 0.0;
    double lbar = 0.0;
    bool ok = true;
    std::string error; // empty unless ok is false
    std::optional<PlannerSolution> first_best;
    std::optional<PlannerSolution> second_best;
    std::optional<EquilibriumReport> decentralized;
    std::optional<MonopolySolution> monopoly;
    // second-best net output minus decentralized net output; NaN unless both
    // solvers ran; nonnegative since the planner optimizes over the same
    // labor response
    double welfare_gap = std::numeric_limits<double>::quiet_NaN();
    Comparison comparison = Comparison::NotComputed;
};

inline CellResult classify_point(const Environment& env, const SolverSet& solvers = {}) {
    CellResult cell;
    cell.theta = env.theta;
    cell.lbar = env.lbar;
    try {
        env.validate();
        if (solvers.first_best) cell.first_best = first_best_solve(env);
        if (solvers.second_best) cell.second_best = second_best_solve(env);
        if (solvers.decentralized) cell.decentralized = classify_equilibria(env);
        if (solvers.monopoly) cell.monopoly = monopoly_solve(env);
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
        return cell;
    }
    if (cell.second_best && cell.decentralized) {
        const PlannerSolution& sb = *cell.second_best;
        const EquilibriumReport& dec = *cell.decentralized;
        cell.welfare_gap = sb.net_output - dec.net_output;
        if (dec.selected == Regime::Unresolved) {
            cell.comparison = Comparison::NotComputed;
        } else if (dec.selected == Regime::NoEnclosure && sb.regime != Regime::NoEnclosure) {
            cell.comparison = Comparison::CoordinationFailure;
        } else {
            const double diff = dec.t_e - sb.t_e;
            cell.comparison = std::fabs(diff) <= 1e-7 ? Comparison::Aligned
                              : diff > 0.0            ? Comparison::Excessive
                                                      : Comparison::Insufficient;
        }
    }
    return cell;
}

/* One row of the threshold table at a fixed theta: the lbar at which the
 * named regime boundary sits, or, when the boundary does not exist there,
 * an empty value with the reason in `note`.
 */
struct ThresholdEntry {
    std::string name;
    std::optional<double> lbar;
    std::string note;
};

inline std::vector<ThresholdEntry> threshold_table(const Environment& env,
                                                   bool diagnostics = false) {
    env.validate();
    std::vector<ThresholdEntry> rows;
    auto push = [&](const char* name, std::optional<double> v, std::string note = "") {
        rows.push_back({name, v, std::move(note)});
    };

    if (env.theta > 1.0) {
        const FirstBestThresholds fb = first_best_thresholds(env);
        push("first_best_start", fb.start_enclosure);
        push("first_best_full", fb.full_enclosure);
    } else {
        push("first_best_start", std::nullopt, "needs theta > 1");
        push("first_best_full", std::nullopt, "needs theta > 1");
    }

    if (env.mu != 0.0) {
        const char* note = "closed form covers the unregulated commons (mu = 0)";
        push("second_best_switch", std::nullopt, note);
        push("second_best_start", std::nullopt, note);
        push("second_best_full", std::nullopt, note);
    } else {
        const SecondBestThresholds sb = second_best_thresholds(env);
        push("second_best_switch", sb.switch_full,
             sb.switch_full ? "" : "defined under strategic complements with theta > 1");
        push("second_best_start", sb.start_enclosure,
             sb.start_enclosure ? "" : "defined under strategic substitutes");
        push("second_best_full", sb.full_enclosure,
             sb.full_enclosure ? "" : "defined under strategic substitutes");
    }

    const bool bench = env.mu == 0.0 && env.tau == 0.0;
    if (bench) {
        const DecentralizedThresholds d = decentralized_thresholds(env);
        push("decentralized_start", d.entry_at_none);
        push("decentralized_full", d.entry_at_full);
    } else if (const auto d = entry_thresholds(env)) {
        push("decentralized_start", d->entry_at_none);
        push("decentralized_full", d->entry_at_full);
    } else {
        const char* note = "entry never pays: compensation exceeds the rent at any density";
        push("decentralized_start", std::nullopt, note);
        push("decentralized_full", std::nullopt, note);
    }

    try {
        push("risk_dominance", global_games_cutoff(env));
    } catch (const std::domain_error& e) {
        push("risk_dominance", std::nullopt, e.what());
    }

    const MonopolyThresholds m = monopoly_thresholds(env);
    const std::string mono_note =
        bench ? std::string() : std::string("evaluated with mu = tau = 0");
    push("monopoly_switch", m.switch_full,
         m.switch_full ? mono_note : "defined under strategic complements");
    push("monopoly_start", m.start_enclosure,
         m.start_enclosure ? mono_note : "defined under strategic substitutes");
    push("monopoly_full", m.full_enclosure,
         m.full_enclosure ? mono_note : "defined under strategic substitutes");
    if (diagnostics)
        push("monopoly_full_variant", m.full_enclosure_variant,
             m.full_enclosure_variant
                 ? "circulating closed form; fails the profit first-order condition at t = 1"
                 : "defined under strategic substitutes");
    return rows;
}

struct LocusPolyline {
    std::string name;
    bool dashed = false; // selection cutoffs are drawn dashed
    std::vector<std::array<double, 2>> points; // (theta, lbar)
};

struct SweepGrid {
    SweepSpec spec;
    std::vector<double> thetas;
    std::vector<double> lbars;
    std::vector<CellResult> cells; // row-major: index = theta_idx * lbars.size() + lbar_idx
    std::vector<LocusPolyline> loci;

    const CellResult& at(int theta_idx, int lbar_idx) const {
        return cells[static_cast<std::size_t>(theta_idx) * lbars.size() +
                     static_cast<std::size_t>(lbar_idx)];
    }
};

namespace detail {

// which solver a locus belongs to, for filtering against SweepSpec::solvers
inline bool locus_requested(const std::string& name, const SolverSet& s) {
    if (name.rfind("first_best", 0) == 0) return s.first_best;
    if (name.rfind("second_best", 0) == 0) return s.second_best;
    if (name.rfind("monopoly", 0) == 0) return s.monopoly;
    return s.decentralized; // decentralized_* and risk_dominance
}

inline std::vector<LocusPolyline> trace_loci(const SweepSpec& spec,
                                             const std::vector<double>& thetas) {
    std::vector<LocusPolyline> loci;
    auto line_for = [&](const std::string& name) -> LocusPolyline& {
        for (LocusPolyline& l : loci)
            if (l.name == name) return l;
        loci.push_back({name, name == "risk_dominance", {}});
        return loci.back();
    };
    for (double theta : thetas) {
        Environment env = spec.base;
        env.theta = theta;
        env.lbar = 1.0; // loci do not depend on it
        for (const ThresholdEntry& e : threshold_table(env)) {
            if (!e.lbar || !locus_requested(e.name, spec.solvers)) continue;
            line_for(e.name).points.push_back({theta, *e.lbar});
        }
    }
    return loci;
}

} // namespace detail

// which field colors the cells of a rendered region map
enum class FillBy { Auto, FirstBest, SecondBest, Decentralized, Monopoly, Comparison };

/* Canned sweep windows for the standard atlas of region maps. All share the
 * window theta in [0.8, 3], lbar in [0.05, 20] at the default alpha = 2/3,
 * A = c = 1 economy; they differ in which solvers run, what colors the
 * cells, and (for the policy atlas, figure 7) the mu/tau panel battery.
 */
struct FigurePanel {
    std::string suffix; // appended to output names; empty for single-panel figures
    std::string title;
    SweepSpec spec;
    FillBy fill = FillBy::Auto;
};

inline std::vector<FigurePanel> figure_panels(int figure, int theta_steps = 200,
                                              int lbar_steps = 200) {
    SweepSpec spec;
    spec.theta_steps = theta_steps;
    spec.lbar_steps = lbar_steps;
    spec.solvers = {false, false, false, false};
    switch (figure) {
    case 1:
        spec.solvers.first_best = true;
        return {{"", "first-best enclosure", spec, FillBy::FirstBest}};
    case 2:
        spec.solvers.decentralized = true;
        return {{"", "decentralized enclosure equilibria", spec, FillBy::Decentralized}};
    case 3:
        spec.solvers.first_best = true;
        spec.solvers.decentralized = true;
        return {{"", "decentralized vs first-best enclosure", spec, FillBy::Decentralized}};
    case 4:
        spec.solvers.first_best = true;
        spec.solvers.second_best = true;
        return {{"", "first-best and second-best enclosure", spec, FillBy::SecondBest}};
    case 5:
        spec.solvers.first_best = true;
        spec.solvers.decentralized = true;
        spec.solvers.monopoly = true;
        return {{"", "monopoly vs decentralized and optimal enclosure", spec, FillBy::Monopoly}};
    case 6:
        spec.solvers.second_best = true;
        spec.solvers.decentralized = true;
        return {{"", "decentralized vs second-best enclosure", spec, FillBy::Comparison}};
    case 7: {
        spec.solvers.first_best = true;
        spec.solvers.decentralized = true;
        std::vector<FigurePanel> panels;
        const struct {
            const char* suffix;
            double mu, tau;
        } grid[] = {{"a", 0.0, 0.0}, {"b", 1.0, 0.0}, {"c", 0.0, 1.0}, {"d", 1.0, 1.0}};
        for (const auto& p : grid) {
            SweepSpec s = spec;
            s.base.mu = p.mu;
            s.base.tau = p.tau;
            panels.push_back({p.suffix,
                              "decentralized enclosure, mu = " + std::to_string(int(p.mu)) +
                                  ", tau = " + std::to_string(int(p.tau)),
                              s, FillBy::Decentralized});
        }
        return panels;
    }
    default:
        throw std::invalid_argument("figure number must be between 1 and 7, got " +
                                    std::to_string(figure));
    }
}

inline SweepGrid run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepGrid grid;
    grid.spec = spec;
    grid.thetas.resize(static_cast<std::size_t>(spec.theta_steps));
    for (int i = 0; i < spec.theta_steps; ++i)
        grid.thetas[static_cast<std::size_t>(i)] =
            spec.theta_min +
            (spec.theta_max - spec.theta_min) * i / static_cast<double>(spec.theta_steps - 1);
    grid.lbars.resize(static_cast<std::size_t>(spec.lbar_steps));
    const double log_lo = std::log(spec.lbar_min), log_hi = std::log(spec.lbar_max);
    for (int j = 0; j < spec.lbar_steps; ++j)
        grid.lbars[static_cast<std::size_t>(j)] =
            std::exp(log_lo + (log_hi - log_lo) * j / static_cast<double>(spec.lbar_steps - 1));

    const std::size_t total = grid.thetas.size() * grid.lbars.size();
    grid.cells.resize(total);
    auto eval = [&](std::size_t k) {
        Environment env = spec.base;
        env.theta = grid.thetas[k / grid.lbars.size()];
        env.lbar = grid.lbars[k % grid.lbars.size()];
        grid.cells[k] = classify_point(env, spec.solvers);
    };
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned workers = hw == 0 ? 1u : hw;
    if (workers <= 1 || total < 512) {
        for (std::size_t k = 0; k < total; ++k) eval(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < total; k = next++) eval(k);
            });
        for (std::thread& th : pool) th.join();
    }
    grid.loci = detail::trace_loci(spec, grid.thetas);
    return grid;
}

} // namespace enclose
