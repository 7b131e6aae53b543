// enclose_cli.cpp -- the `enclose` command.
//
// Subcommands: solve (one economy, all solvers), thresholds (regime-boundary
// table at fixed theta), sweep (regime map over a (theta, lbar) grid),
// figure (canned sweep presets 1-7), verify (brute-force oracles vs closed
// forms). Text goes to stdout, diagnostics to stderr; --json switches any
// subcommand to machine output. Exit codes: 0 success, 1 verification
// mismatch, 2 invalid parameters, 3 I/O failure.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <enclose.hpp>

namespace {

using namespace enclose;

void apply_config_key(Environment& env, ManufacturingParams& mfg, bool& mfg_given,
                      const std::string& key, const std::string& raw) {
    double v = 0.0;
    try {
        std::size_t pos = 0;
        v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
    } catch (...) {
        throw std::invalid_argument("value for \"" + key + "\" is not a number: \"" + raw +
                                    "\"");
    }
    if (key == "A") env.A = v;
    else if (key == "theta") env.theta = v;
    else if (key == "lbar") env.lbar = v;
    else if (key == "alpha") env.alpha = v;
    else if (key == "c") env.c = v;
    else if (key == "mu") env.mu = v;
    else if (key == "tau") env.tau = v;
    else if (key == "p") { mfg.p = v; mfg_given = true; }
    else if (key == "beta") { mfg.beta = v; mfg_given = true; }
    else if (key == "A_m") { mfg.A_m = v; mfg_given = true; }
    else if (key == "k_bar") { mfg.k_bar = v; mfg_given = true; }
    else throw std::invalid_argument("unknown configuration key: " + key);
}

// economy parameters shared by most subcommands: defaults, then the --config
// file, then explicit flags, later layers overriding earlier ones
struct EnvOpts {
    Environment env{};
    ManufacturingParams mfg{};
    bool mfg_given = false;

    std::string config_path;
    double vA = 0, vtheta = 0, vlbar = 0, valpha = 0, vc = 0, vmu = 0, vtau = 0;
    double vp = 0, vbeta = 0, vAm = 0, vkbar = 0;
    CLI::Option *oconfig = nullptr, *oA = nullptr, *otheta = nullptr, *olbar = nullptr,
                *oalpha = nullptr, *oc = nullptr, *omu = nullptr, *otau = nullptr,
                *op = nullptr, *obeta = nullptr, *oAm = nullptr, *okbar = nullptr;

    void attach(CLI::App* cmd, bool with_mfg) {
        oconfig = cmd->add_option("--config", config_path,
                                  "flat key = value configuration file; flags override it");
        oA = cmd->add_option("--A", vA, "agricultural TFP (default 1)");
        otheta = cmd->add_option("--theta", vtheta, "enclosed-sector TFP premium (default 2)");
        olbar = cmd->add_option("--lbar", vlbar, "workers per unit land (default 1)");
        oalpha = cmd->add_option("--alpha", valpha, "labor exponent (default 2/3)");
        oc = cmd->add_option("--c", vc, "enclosure cost per unit land (default 1)");
        omu = cmd->add_option("--mu", vmu,
                              "commons regulation: possession-rent share kept on exit "
                              "(default 0)");
        otau = cmd->add_option("--tau", vtau,
                               "compensation per unit enclosed, as a share of customary rent "
                               "(default 0)");
        if (with_mfg) {
            op = cmd->add_option("--p", vp,
                                 "relative price of manufactures; enables the three-sector "
                                 "section");
            obeta = cmd->add_option("--beta", vbeta, "manufacturing labor exponent (default 0.5)");
            oAm = cmd->add_option("--A_m", vAm, "manufacturing TFP (default 1)");
            okbar = cmd->add_option("--k_bar", vkbar,
                                    "manufacturing capital per worker (default 1)");
        }
    }

    void resolve() {
        if (oconfig != nullptr && oconfig->count() > 0)
            for (const auto& [k, v] : parse_key_value_file(config_path))
                apply_config_key(env, mfg, mfg_given, k, v);
        if (oA->count()) env.A = vA;
        if (otheta->count()) env.theta = vtheta;
        if (olbar->count()) env.lbar = vlbar;
        if (oalpha->count()) env.alpha = valpha;
        if (oc->count()) env.c = vc;
        if (omu->count()) env.mu = vmu;
        if (otau->count()) env.tau = vtau;
        if (op != nullptr) {
            if (op->count()) { mfg.p = vp; mfg_given = true; }
            if (obeta->count()) { mfg.beta = vbeta; mfg_given = true; }
            if (oAm->count()) { mfg.A_m = vAm; mfg_given = true; }
            if (okbar->count()) { mfg.k_bar = vkbar; mfg_given = true; }
        }
    }
};

int parse_int_strict(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (...) {
        throw std::invalid_argument("value for \"" + key + "\" is not an integer: \"" + raw +
                                    "\"");
    }
}

SolverSet parse_solvers(const std::string& csv) {
    SolverSet s{false, false, false, false};
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const std::size_t a = tok.find_first_not_of(" \t");
        const std::size_t b = tok.find_last_not_of(" \t");
        const std::string name = a == std::string::npos ? "" : tok.substr(a, b - a + 1);
        if (name == "first_best") s.first_best = true;
        else if (name == "second_best") s.second_best = true;
        else if (name == "decentralized") s.decentralized = true;
        else if (name == "monopoly") s.monopoly = true;
        else
            throw std::invalid_argument("unknown solver \"" + name +
                                        "\" (expected first_best, second_best, decentralized, "
                                        "monopoly)");
    }
    if (!s.any()) throw std::invalid_argument("solver list is empty");
    return s;
}

void apply_sweep_key(SweepSpec& spec, const std::string& key, const std::string& raw) {
    if (key == "theta_min") spec.theta_min = std::stod(raw);
    else if (key == "theta_max") spec.theta_max = std::stod(raw);
    else if (key == "theta_steps") spec.theta_steps = parse_int_strict(key, raw);
    else if (key == "lbar_min") spec.lbar_min = std::stod(raw);
    else if (key == "lbar_max") spec.lbar_max = std::stod(raw);
    else if (key == "lbar_steps") spec.lbar_steps = parse_int_strict(key, raw);
    else if (key == "solvers") spec.solvers = parse_solvers(raw);
    else throw std::invalid_argument("unknown sweep key: " + key);
}

// ---- solve ----

int cmd_solve(EnvOpts& eo, bool json) {
    eo.resolve();
    const Environment& env = eo.env;
    env.validate();
    const CompositeParams cp = composite(env);
    const PlannerSolution fb = first_best_solve(env);
    const PlannerSolution sb = second_best_solve(env);
    const EquilibriumReport dec = classify_equilibria(env);
    const MonopolySolution mono = monopoly_solve(env);

    std::optional<ExternalityTerms> ext;
    std::string ext_note;
    if (env.mu != 0.0 || env.tau != 0.0)
        ext_note = "decomposition covers the mu = tau = 0 benchmark";
    else if (!(dec.t_e > 0.0 && dec.t_e < 1.0))
        ext_note = "equilibrium sits at a corner";
    else
        ext = externality_decomposition(env, dec.t_e);

    std::optional<ThreeSectorEquilibrium> three;
    if (eo.mfg_given) three = three_sector_enclosure_equilibrium(env, eo.mfg);

    if (json) {
        nlohmann::json j{{"environment", to_json(env)},
                         {"composites", to_json(cp)},
                         {"first_best", to_json(fb)},
                         {"second_best", to_json(sb)},
                         {"decentralized", to_json(dec)},
                         {"monopoly", to_json(mono)},
                         {"externality", ext ? to_json(*ext) : nlohmann::json(nullptr)},
                         {"externality_note", ext_note}};
        if (three) {
            nlohmann::json t3{{"regime", to_string(three->regime)},
                              {"t_e", round9(three->t_e)},
                              {"allocation", to_json(three->allocation)}};
            j["three_sector"] = std::move(t3);
        } else {
            j["three_sector"] = nullptr;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::ostringstream out;
    out << "environment    A=" << format9(env.A) << " theta=" << format9(env.theta)
        << " lbar=" << format9(env.lbar) << " alpha=" << format9(env.alpha)
        << " c=" << format9(env.c) << " mu=" << format9(env.mu) << " tau=" << format9(env.tau)
        << "\n";
    out << "composites     lambda0=" << format9(cp.lambda0) << " lambda1=" << format9(cp.lambda1)
        << " lambda_mu=" << format9(cp.lambda_mu) << " theta_high=" << format9(cp.theta_high)
        << " theta_high_mu=" << format9(cp.theta_high_mu) << "\n";
    auto planner_line = [&](const char* label, const PlannerSolution& s) {
        out << label << "regime=" << to_string(s.regime) << " t_e=" << format9(s.t_e)
            << " l_e=" << format9(s.l_e) << " gross_output=" << format9(s.gross_output)
            << " net_output=" << format9(s.net_output) << "\n";
    };
    planner_line("first_best     ", fb);
    planner_line("second_best    ", sb);
    out << "decentralized  regime=" << to_string(dec.regime) << " nature=" << to_string(dec.nature)
        << " t_e=" << format9(dec.t_e);
    if (dec.regime == Regime::Multiple) {
        out << " selected=" << to_string(dec.selected);
        if (dec.cutoff) out << " cutoff=" << format9(*dec.cutoff);
        if (std::isfinite(dec.unstable_t_e)) out << " unstable_t_e=" << format9(dec.unstable_t_e);
    }
    out << "\n";
    out << "               l_e=" << format9(dec.l_e) << " wage=" << format9(dec.wage)
        << " rent_enclosed=" << format9(dec.rent_enclosed)
        << " rent_customary=" << format9(dec.rent_customary)
        << (dec.rent_customary_is_limit ? " (empty-sector limit)" : "")
        << " labor_income=" << format9(dec.labor_income)
        << " net_output=" << format9(dec.net_output) << "\n";
    out << "monopoly       regime=" << to_string(mono.regime) << " t_e=" << format9(mono.t_e)
        << " profit=" << format9(mono.profit) << " net_output=" << format9(mono.net_output)
        << "\n";
    if (ext)
        out << "externality    at t_e=" << format9(dec.t_e)
            << ": net_private=" << format9(ext->net_private)
            << " external_cost=" << format9(ext->external_cost)
            << " external_benefit=" << format9(ext->external_benefit)
            << " total=" << format9(ext->total) << "\n";
    else
        out << "externality    n/a (" << ext_note << ")\n";
    if (three) {
        const ThreeSectorAllocation& a = three->allocation;
        out << "three_sector   regime=" << to_string(three->regime)
            << " t_e=" << format9(three->t_e) << " l_m=" << format9(a.l_m)
            << " l_e=" << format9(a.l_e) << " wage=" << format9(a.wage)
            << " output_enclosed=" << format9(a.output_enclosed)
            << " output_customary=" << format9(a.output_customary)
            << " output_manufacturing=" << format9(a.output_manufacturing) << "\n";
    }
    std::cout << out.str();
    return 0;
}

// ---- thresholds ----

int cmd_thresholds(EnvOpts& eo, bool json, bool diagnostics) {
    eo.resolve();
    eo.env.validate();
    const std::vector<ThresholdEntry> rows = threshold_table(eo.env, diagnostics);
    if (json) {
        nlohmann::json j{{"environment", to_json(eo.env)}, {"thresholds", to_json(rows)}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::ostringstream out;
    out << "locus                   lbar             note\n";
    for (const ThresholdEntry& e : rows) {
        std::string name = e.name;
        name.resize(24, ' ');
        std::string value = e.lbar ? format9(*e.lbar) : "n/a";
        value.resize(17, ' ');
        out << name << value << e.note << "\n";
    }
    std::cout << out.str();
    return 0;
}

// ---- sweep and figure ----

std::vector<std::string> write_grid_files(const SweepGrid& grid, const std::string& base,
                                          bool with_svg, const std::string& title, FillBy fill) {
    std::vector<std::string> written;
    write_text_file(base + ".csv", to_csv(grid));
    written.push_back(base + ".csv");
    write_text_file(base + ".json", to_json(grid).dump(2) + "\n");
    written.push_back(base + ".json");
    if (with_svg) {
        write_text_file(base + ".svg", render_region_map_svg(grid, title, fill));
        written.push_back(base + ".svg");
    }
    return written;
}

void report_written(const std::vector<std::string>& written, bool json) {
    if (json) {
        nlohmann::json j{{"written", written}};
        std::cout << j.dump(2) << "\n";
    } else {
        for (const std::string& w : written) std::cout << "wrote " << w << "\n";
    }
}

int cmd_sweep(EnvOpts& eo, const CLI::App* cmd, const std::string& spec_path,
              const std::string& out_base, bool with_svg, bool json, double tmin, double tmax,
              int tsteps, double lmin, double lmax, int lsteps, const std::string& solvers_csv) {
    eo.resolve();
    SweepSpec spec;
    spec.base = eo.env;
    if (!spec_path.empty())
        for (const auto& [k, v] : parse_key_value_file(spec_path)) apply_sweep_key(spec, k, v);
    if (cmd->count("--theta-min")) spec.theta_min = tmin;
    if (cmd->count("--theta-max")) spec.theta_max = tmax;
    if (cmd->count("--theta-steps")) spec.theta_steps = tsteps;
    if (cmd->count("--lbar-min")) spec.lbar_min = lmin;
    if (cmd->count("--lbar-max")) spec.lbar_max = lmax;
    if (cmd->count("--lbar-steps")) spec.lbar_steps = lsteps;
    if (cmd->count("--solvers")) spec.solvers = parse_solvers(solvers_csv);
    const SweepGrid grid = run_sweep(spec);
    if (out_base.empty()) {
        if (with_svg)
            throw std::invalid_argument("--svg needs --out to know where to write the file");
        if (json) std::cout << to_json(grid).dump(2) << "\n";
        else write_sweep_csv(grid, std::cout);
        return 0;
    }
    report_written(write_grid_files(grid, out_base, with_svg, "parameter sweep", FillBy::Auto),
                   json);
    return 0;
}

int cmd_figure(int number, const std::string& panel, int resolution, const std::string& out_dir,
               bool json) {
    if (resolution < 2) throw std::invalid_argument("--resolution must be at least 2");
    std::vector<FigurePanel> panels = figure_panels(number, resolution, resolution);
    if (!panel.empty()) {
        if (number != 7)
            throw std::invalid_argument("--panel applies to the four-panel policy map "
                                        "(figure 7) only");
        std::vector<FigurePanel> keep;
        for (FigurePanel& p : panels)
            if (p.suffix == panel) keep.push_back(std::move(p));
        if (keep.empty())
            throw std::invalid_argument("panel must be one of a, b, c, d; got \"" + panel + "\"");
        panels = std::move(keep);
    }
    std::vector<std::string> written;
    for (const FigurePanel& p : panels) {
        const SweepGrid grid = run_sweep(p.spec);
        const std::string base = out_dir + "/figure" + std::to_string(number) + p.suffix;
        for (std::string& w : write_grid_files(grid, base, true, p.title, p.fill))
            written.push_back(std::move(w));
    }
    report_written(written, json);
    return 0;
}

// ---- verify ----

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double got = 0, want = 0, diff = 0, tol = 0;
    std::string note;
};

Environment point(double theta, double lbar, double mu = 0.0, double tau = 0.0) {
    Environment env;
    env.theta = theta;
    env.lbar = lbar;
    env.mu = mu;
    env.tau = tau;
    return env;
}

/* The oracle battery. `perturb` rescales the enclosure return on the
 * closed-form side only (implemented as c -> c/perturb, which shifts every
 * analytic optimum and threshold the same way a rent rescaling would), so a
 * factor other than 1 must make the brute-force comparisons fail; it exists
 * to prove the harness can detect disagreement.
 */
int cmd_verify(int agents, std::uint64_t seed, double step, double perturb, bool json) {
    if (agents < 2) throw std::invalid_argument("--agents must be at least 2");
    if (!(step > 0.0 && step <= 0.01))
        throw std::invalid_argument("--step must be in (0, 0.01]");
    if (!(perturb > 0.0)) throw std::invalid_argument("--perturb must be positive");

    std::vector<VerifyCheck> checks;
    auto add = [&](std::string name, double got, double want, double tol, std::string note = "") {
        VerifyCheck ck;
        ck.name = std::move(name);
        ck.got = got;
        ck.want = want;
        ck.diff = std::fabs(got - want);
        ck.tol = tol;
        ck.pass = note.empty() && ck.diff <= tol;
        ck.note = std::move(note);
        checks.push_back(std::move(ck));
    };
    auto analytic = [&](const Environment& env) {
        Environment e = env;
        e.c /= perturb;
        return e;
    };

    enum class Want { Analytic, Corner0, Corner1 };
    struct BrdPoint {
        Environment env;
        double init;
        Want want;
    };
    const std::vector<BrdPoint> battery = {
        {point(2.0, 1.0), 0.0, Want::Analytic},
        {point(2.0, 1.0), 1.0, Want::Analytic},
        {point(2.0, 0.5), 0.5, Want::Analytic},
        {point(2.0, 2.5), 0.3, Want::Analytic},
        {point(1.2, 6.0), 0.0, Want::Corner0},
        {point(1.2, 6.0), 1.0, Want::Corner1},
        {point(1.2, 3.0), 1.0, Want::Analytic},
        {point(1.2, 9.0), 0.0, Want::Analytic},
        {point(2.0, 1.0, 0.5, 0.0), 0.0, Want::Analytic},
        {point(2.0, 1.0, 1.0, 1.0), 0.0, Want::Analytic},
        {point(1.5, 1.8), 0.5, Want::Analytic},
        {point(3.0, 0.9), 0.7, Want::Analytic},
    };
    for (const BrdPoint& bp : battery) {
        AgentSimConfig cfg;
        cfg.n_agents = agents;
        cfg.seed = seed;
        cfg.initial_enclosed = bp.init;
        const OracleReport rep = best_response_dynamics(bp.env, cfg);
        double want = 0.0;
        switch (bp.want) {
        case Want::Analytic: want = classify_equilibria(analytic(bp.env)).t_e; break;
        case Want::Corner0: want = 0.0; break;
        case Want::Corner1: want = 1.0; break;
        }
        std::ostringstream name;
        name << "best_response[theta=" << format9(bp.env.theta) << ",lbar=" << format9(bp.env.lbar)
             << ",mu=" << format9(bp.env.mu) << ",tau=" << format9(bp.env.tau)
             << ",init=" << format9(bp.init) << "]";
        std::string note;
        if (!rep.converged) note = "did not converge";
        else if (!rep.nash_verified) note = "fixed point is not Nash";
        add(name.str(), rep.t_e, want, 1.0 / agents + 1e-9, note);
    }

    {
        const Environment env = point(2.0, 1.0);
        const double step2 = std::max(step, 1e-3); // the 2-D scan is quadratic in 1/step
        const GridOptimum g = grid_search_optimum(env, Objective::FirstBest, step2);
        add("grid[first_best]", g.t_e, first_best_solve(analytic(env)).t_e, 2.0 * step2 + 1e-12);
    }
    {
        const Environment env = point(2.0, 1.0);
        const GridOptimum g = grid_search_optimum(env, Objective::SecondBest, step);
        add("grid[second_best]", g.t_e, second_best_solve(analytic(env)).t_e, 2.0 * step + 1e-12);
    }
    {
        const Environment env = point(2.0, 3.0);
        const GridOptimum g = grid_search_optimum(env, Objective::Monopoly, step);
        add("grid[monopoly]", g.t_e, monopoly_solve(analytic(env)).t_e, 2.0 * step + 1e-12);
    }

    for (double theta : {1.2, 1.35}) {
        const Environment env = point(theta, 1.0);
        const double got = integral_root_cutoff(env);
        const double want = global_games_cutoff(analytic(env));
        add("cutoff[theta=" + format9(theta) + "]", got, want, 1e-6 * want);
    }

    int passed = 0;
    for (const VerifyCheck& ck : checks) passed += ck.pass ? 1 : 0;
    const bool all_pass = passed == static_cast<int>(checks.size());

    if (json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const VerifyCheck& ck : checks)
            arr.push_back({{"name", ck.name},
                           {"pass", ck.pass},
                           {"got", round9(ck.got)},
                           {"want", round9(ck.want)},
                           {"diff", round9(ck.diff)},
                           {"tol", round9(ck.tol)},
                           {"note", ck.note}});
        nlohmann::json j{{"checks", std::move(arr)},
                         {"passed", passed},
                         {"total", static_cast<int>(checks.size())},
                         {"agents", agents},
                         {"seed", seed},
                         {"step", round9(step)},
                         {"perturb", round9(perturb)}};
        std::cout << j.dump(2) << "\n";
    } else {
        for (const VerifyCheck& ck : checks) {
            std::cout << (ck.pass ? "PASS " : "FAIL ") << ck.name << " got=" << format9(ck.got)
                      << " want=" << format9(ck.want) << " |diff|=" << format9(ck.diff)
                      << " tol=" << format9(ck.tol);
            if (!ck.note.empty()) std::cout << " (" << ck.note << ")";
            std::cout << "\n";
        }
        std::cout << "verify: " << passed << "/" << checks.size() << " checks passed\n";
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"equilibrium engine for the land-enclosure aggregative game"};
    app.require_subcommand(1);

    CLI::App* solve = app.add_subcommand("solve", "solve one economy with every solver");
    EnvOpts solve_env;
    solve_env.attach(solve, true);
    bool solve_json = false;
    solve->add_flag("--json", solve_json, "machine-readable output");

    CLI::App* thresholds =
        app.add_subcommand("thresholds", "regime-boundary table at the given theta");
    EnvOpts thr_env;
    thr_env.attach(thresholds, false);
    bool thr_json = false, thr_diag = false;
    thresholds->add_flag("--json", thr_json, "machine-readable output");
    thresholds->add_flag("--diagnostics", thr_diag,
                         "include documented-discrepancy loci variants");

    CLI::App* sweep = app.add_subcommand("sweep", "regime map over a (theta, lbar) grid");
    EnvOpts sweep_env;
    sweep_env.attach(sweep, false);
    std::string sweep_spec_path, sweep_out, sweep_solvers;
    bool sweep_svg = false, sweep_json = false;
    double sw_tmin = 0.8, sw_tmax = 3.0, sw_lmin = 0.05, sw_lmax = 20.0;
    int sw_tsteps = 100, sw_lsteps = 100;
    sweep->add_option("--spec", sweep_spec_path,
                      "key = value sweep geometry file (theta_min, theta_max, theta_steps, "
                      "lbar_min, lbar_max, lbar_steps, solvers)");
    sweep->add_option("--theta-min", sw_tmin, "grid lower bound for theta (default 0.8)");
    sweep->add_option("--theta-max", sw_tmax, "grid upper bound for theta (default 3)");
    sweep->add_option("--theta-steps", sw_tsteps, "grid points along theta (default 100)");
    sweep->add_option("--lbar-min", sw_lmin, "grid lower bound for lbar (default 0.05)");
    sweep->add_option("--lbar-max", sw_lmax, "grid upper bound for lbar (default 20)");
    sweep->add_option("--lbar-steps", sw_lsteps,
                      "grid points along lbar, log-spaced (default 100)");
    sweep->add_option("--solvers", sweep_solvers,
                      "comma list of first_best, second_best, decentralized, monopoly "
                      "(default all)");
    sweep->add_option("--out", sweep_out,
                      "output base path; writes <out>.csv and <out>.json (no --out: CSV or "
                      "--json to stdout)");
    sweep->add_flag("--svg", sweep_svg, "also render <out>.svg");
    sweep->add_flag("--json", sweep_json, "machine-readable output");

    CLI::App* figure = app.add_subcommand("figure", "canned region-map presets 1-7");
    int fig_number = 0, fig_resolution = 200;
    std::string fig_panel, fig_out_dir = ".";
    bool fig_json = false;
    figure->add_option("number", fig_number, "figure preset, 1 through 7")->required();
    figure->add_option("--panel", fig_panel, "restrict figure 7 to one panel: a, b, c or d");
    figure->add_option("--resolution", fig_resolution,
                       "grid points per axis (default 200)");
    figure->add_option("--out-dir", fig_out_dir, "directory for the emitted files (default .)");
    figure->add_flag("--json", fig_json, "machine-readable output");

    CLI::App* verify =
        app.add_subcommand("verify", "brute-force oracles against the closed forms");
    int ver_agents = 200;
    std::uint64_t ver_seed = 12345;
    double ver_step = 1e-3, ver_perturb = 1.0;
    bool ver_json = false;
    verify->add_option("--agents", ver_agents,
                       "land parcels in the best-response simulation (default 200)");
    verify->add_option("--seed", ver_seed, "update-order RNG seed (default 12345)");
    verify->add_option("--step", ver_step, "grid-search step (default 1e-3)");
    verify->add_option("--perturb", ver_perturb,
                       "rescale the closed-form side by this factor; values other than 1 must "
                       "fail (default 1)");
    verify->add_flag("--json", ver_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve(solve_env, solve_json);
        if (*thresholds) return cmd_thresholds(thr_env, thr_json, thr_diag);
        if (*sweep)
            return cmd_sweep(sweep_env, sweep, sweep_spec_path, sweep_out, sweep_svg, sweep_json,
                             sw_tmin, sw_tmax, sw_tsteps, sw_lmin, sw_lmax, sw_lsteps,
                             sweep_solvers);
        if (*figure)
            return cmd_figure(fig_number, fig_panel, fig_resolution, fig_out_dir, fig_json);
        if (*verify) return cmd_verify(ver_agents, ver_seed, ver_step, ver_perturb, ver_json);
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
