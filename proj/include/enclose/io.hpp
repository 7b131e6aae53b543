#pragma once
/* io.hpp -- serialization of solver output: CSV tables, JSON documents, SVG
 * region maps, and the flat key=value configuration format used by the CLI.
 *
 * Floating-point fields are written with 9 significant digits so emitted
 * files are stable and reparse to the values they were written from.
 */

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "decentralized.hpp"
#include "environment.hpp"
#include "monopoly.hpp"
#include "oracle.hpp"
#include "planner.hpp"
#include "regions.hpp"
#include "structural.hpp"

namespace enclose {

inline std::string format9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// nearest double to the 9-digit text form, so JSON numbers match the CSV text
inline double round9(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format9(v).c_str(), nullptr);
}

namespace detail {

inline nlohmann::json json_num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round9(v);
}

inline nlohmann::json json_opt(const std::optional<double>& v) {
    return v ? json_num(*v) : nlohmann::json(nullptr);
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline std::string csv_num(double v) { return std::isnan(v) ? "" : format9(v); }

} // namespace detail

inline nlohmann::json to_json(const Environment& env) {
    using detail::json_num;
    return {{"A", json_num(env.A)},       {"theta", json_num(env.theta)},
            {"lbar", json_num(env.lbar)}, {"alpha", json_num(env.alpha)},
            {"c", json_num(env.c)},       {"mu", json_num(env.mu)},
            {"tau", json_num(env.tau)}};
}

inline nlohmann::json to_json(const CompositeParams& cp) {
    using detail::json_num;
    return {{"lambda0", json_num(cp.lambda0)},
            {"lambda1", json_num(cp.lambda1)},
            {"lambda_mu", json_num(cp.lambda_mu)},
            {"theta_high", json_num(cp.theta_high)},
            {"theta_high_mu", json_num(cp.theta_high_mu)}};
}

inline nlohmann::json to_json(const PlannerSolution& s) {
    using detail::json_num;
    return {{"regime", to_string(s.regime)},
            {"t_e", json_num(s.t_e)},
            {"l_e", json_num(s.l_e)},
            {"gross_output", json_num(s.gross_output)},
            {"net_output", json_num(s.net_output)}};
}

inline nlohmann::json to_json(const EquilibriumReport& r) {
    using detail::json_num;
    return {{"regime", to_string(r.regime)},
            {"nature", to_string(r.nature)},
            {"t_e", json_num(r.t_e)},
            {"selected", to_string(r.selected)},
            {"unstable_t_e", json_num(r.unstable_t_e)},
            {"cutoff", detail::json_opt(r.cutoff)},
            {"l_e", json_num(r.l_e)},
            {"wage", json_num(r.wage)},
            {"rent_enclosed", json_num(r.rent_enclosed)},
            {"rent_customary", json_num(r.rent_customary)},
            {"rent_customary_is_limit", r.rent_customary_is_limit},
            {"labor_income", json_num(r.labor_income)},
            {"net_output", json_num(r.net_output)}};
}

inline nlohmann::json to_json(const MonopolySolution& m) {
    using detail::json_num;
    return {{"regime", to_string(m.regime)},
            {"t_e", json_num(m.t_e)},
            {"profit", json_num(m.profit)},
            {"net_output", json_num(m.net_output)}};
}

inline nlohmann::json to_json(const ExternalityTerms& e) {
    using detail::json_num;
    return {{"net_private", json_num(e.net_private)},
            {"external_cost", json_num(e.external_cost)},
            {"external_benefit", json_num(e.external_benefit)},
            {"total", json_num(e.total)}};
}

inline nlohmann::json to_json(const ThreeSectorAllocation& a) {
    using detail::json_num;
    return {{"t_e", json_num(a.t_e)},
            {"l_m", json_num(a.l_m)},
            {"l_e", json_num(a.l_e)},
            {"wage", json_num(a.wage)},
            {"output_enclosed", json_num(a.output_enclosed)},
            {"output_customary", json_num(a.output_customary)},
            {"output_manufacturing", json_num(a.output_manufacturing)}};
}

inline nlohmann::json to_json(const OracleReport& r) {
    return {{"t_e", detail::json_num(r.t_e)},
            {"rounds", r.rounds},
            {"converged", r.converged},
            {"nash_verified", r.nash_verified},
            {"seed", r.seed}};
}

inline nlohmann::json to_json(const std::vector<ThresholdEntry>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ThresholdEntry& e : rows)
        arr.push_back({{"name", e.name}, {"lbar", detail::json_opt(e.lbar)}, {"note", e.note}});
    return arr;
}

inline nlohmann::json to_json(const CellResult& c) {
    using detail::json_num;
    nlohmann::json j{{"theta", json_num(c.theta)},
                     {"lbar", json_num(c.lbar)},
                     {"ok", c.ok},
                     {"error", c.error},
                     {"welfare_gap", json_num(c.welfare_gap)},
                     {"comparison", to_string(c.comparison)}};
    j["first_best"] = c.first_best ? to_json(*c.first_best) : nlohmann::json(nullptr);
    j["second_best"] = c.second_best ? to_json(*c.second_best) : nlohmann::json(nullptr);
    j["decentralized"] = c.decentralized ? to_json(*c.decentralized) : nlohmann::json(nullptr);
    j["monopoly"] = c.monopoly ? to_json(*c.monopoly) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json to_json(const SweepSpec& spec) {
    using detail::json_num;
    return {{"theta_min", json_num(spec.theta_min)},
            {"theta_max", json_num(spec.theta_max)},
            {"theta_steps", spec.theta_steps},
            {"lbar_min", json_num(spec.lbar_min)},
            {"lbar_max", json_num(spec.lbar_max)},
            {"lbar_steps", spec.lbar_steps},
            {"base", to_json(spec.base)},
            {"solvers",
             {{"first_best", spec.solvers.first_best},
              {"second_best", spec.solvers.second_best},
              {"decentralized", spec.solvers.decentralized},
              {"monopoly", spec.solvers.monopoly}}}};
}

inline nlohmann::json to_json(const SweepGrid& grid) {
    nlohmann::json j;
    j["spec"] = to_json(grid.spec);
    nlohmann::json thetas = nlohmann::json::array();
    for (double v : grid.thetas) thetas.push_back(detail::json_num(v));
    nlohmann::json lbars = nlohmann::json::array();
    for (double v : grid.lbars) lbars.push_back(detail::json_num(v));
    j["thetas"] = std::move(thetas);
    j["lbars"] = std::move(lbars);
    nlohmann::json cells = nlohmann::json::array();
    for (const CellResult& c : grid.cells) cells.push_back(to_json(c));
    j["cells"] = std::move(cells);
    nlohmann::json loci = nlohmann::json::array();
    for (const LocusPolyline& l : grid.loci) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : l.points)
            pts.push_back({detail::json_num(p[0]), detail::json_num(p[1])});
        loci.push_back({{"name", l.name}, {"dashed", l.dashed}, {"points", std::move(pts)}});
    }
    j["loci"] = std::move(loci);
    return j;
}

/* CSV, one row per cell in grid order. Columns, left to right: theta, lbar,
 * then per requested solver its regime / t_e / net output (decentralized adds
 * the selected corner, monopoly its profit), then welfare_gap and comparison
 * when both of second_best and decentralized ran, then cell_ok, cell_error.
 */
inline void write_sweep_csv(const SweepGrid& grid, std::ostream& os) {
    using detail::csv_num;
    const SolverSet& s = grid.spec.solvers;
    os << "theta,lbar";
    if (s.first_best) os << ",first_best_regime,first_best_t_e,first_best_net_output";
    if (s.second_best) os << ",second_best_regime,second_best_t_e,second_best_net_output";
    if (s.decentralized)
        os << ",decentralized_regime,decentralized_selected,decentralized_t_e,"
              "decentralized_net_output";
    if (s.monopoly) os << ",monopoly_regime,monopoly_t_e,monopoly_profit,monopoly_net_output";
    if (s.second_best && s.decentralized) os << ",welfare_gap,comparison";
    os << ",cell_ok,cell_error\n";
    for (const CellResult& c : grid.cells) {
        os << csv_num(c.theta) << ',' << csv_num(c.lbar);
        if (s.first_best) {
            if (c.first_best)
                os << ',' << to_string(c.first_best->regime) << ',' << csv_num(c.first_best->t_e)
                   << ',' << csv_num(c.first_best->net_output);
            else
                os << ",,,";
        }
        if (s.second_best) {
            if (c.second_best)
                os << ',' << to_string(c.second_best->regime) << ','
                   << csv_num(c.second_best->t_e) << ',' << csv_num(c.second_best->net_output);
            else
                os << ",,,";
        }
        if (s.decentralized) {
            if (c.decentralized)
                os << ',' << to_string(c.decentralized->regime) << ','
                   << to_string(c.decentralized->selected) << ',' << csv_num(c.decentralized->t_e)
                   << ',' << csv_num(c.decentralized->net_output);
            else
                os << ",,,,";
        }
        if (s.monopoly) {
            if (c.monopoly)
                os << ',' << to_string(c.monopoly->regime) << ',' << csv_num(c.monopoly->t_e)
                   << ',' << csv_num(c.monopoly->profit) << ','
                   << csv_num(c.monopoly->net_output);
            else
                os << ",,,,";
        }
        if (s.second_best && s.decentralized)
            os << ',' << csv_num(c.welfare_gap) << ',' << to_string(c.comparison);
        os << ',' << (c.ok ? "true" : "false") << ',' << detail::csv_field(c.error) << '\n';
    }
}

inline std::string to_csv(const SweepGrid& grid) {
    std::ostringstream os;
    write_sweep_csv(grid, os);
    return os.str();
}

namespace detail {

inline const char* regime_color(Regime r) {
    switch (r) {
    case Regime::NoEnclosure: return "#f0f0f0";
    case Regime::Partial: return "#fdb863";
    case Regime::Full: return "#e66101";
    case Regime::Multiple: return "#b2abd2";
    case Regime::Unresolved: return "#888888";
    }
    return "#888888";
}

inline const char* comparison_color(Comparison c) {
    switch (c) {
    case Comparison::Aligned: return "#f0f0f0";
    case Comparison::Excessive: return "#d7191c";
    case Comparison::Insufficient: return "#abd9e9";
    case Comparison::CoordinationFailure: return "#2c7bb6";
    case Comparison::NotComputed: return "#ffffff";
    }
    return "#ffffff";
}

inline const char* locus_color(const std::string& name) {
    if (name.rfind("first_best", 0) == 0) return "#1b7837";
    if (name.rfind("second_best", 0) == 0) return "#2166ac";
    if (name.rfind("monopoly", 0) == 0) return "#7b3294";
    if (name == "risk_dominance") return "#b2182b";
    return "#1a1a1a";
}

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace detail

/* Static SVG region map: flat-filled cells (vertical runs of equal color are
 * merged into single rects), threshold loci as overlaid polylines (selection
 * cutoffs dashed), linear theta axis, log lbar axis, legend on the right.
 */
inline std::string render_region_map_svg(const SweepGrid& grid, const std::string& title = "",
                                         FillBy fill = FillBy::Auto) {
    const SolverSet& sv = grid.spec.solvers;
    FillBy f = fill;
    if (f == FillBy::Auto) {
        if (sv.second_best && sv.decentralized) f = FillBy::Comparison;
        else if (sv.decentralized) f = FillBy::Decentralized;
        else if (sv.second_best) f = FillBy::SecondBest;
        else if (sv.first_best) f = FillBy::FirstBest;
        else f = FillBy::Monopoly;
    }
    const bool available = (f == FillBy::FirstBest && sv.first_best) ||
                           (f == FillBy::SecondBest && sv.second_best) ||
                           (f == FillBy::Decentralized && sv.decentralized) ||
                           (f == FillBy::Monopoly && sv.monopoly) ||
                           (f == FillBy::Comparison && sv.second_best && sv.decentralized);
    if (!available)
        throw std::invalid_argument("region map fill requests a solver the sweep did not run");
    auto fill_of = [&](const CellResult& c) -> const char* {
        if (!c.ok) return "#ffffff";
        switch (f) {
        case FillBy::Comparison: return detail::comparison_color(c.comparison);
        case FillBy::FirstBest: return detail::regime_color(c.first_best->regime);
        case FillBy::SecondBest: return detail::regime_color(c.second_best->regime);
        case FillBy::Decentralized: return detail::regime_color(c.decentralized->regime);
        case FillBy::Monopoly: return detail::regime_color(c.monopoly->regime);
        case FillBy::Auto: break;
        }
        return "#ffffff";
    };

    const double px = 64, py = 36, pw = 620, ph = 560;
    const double width = px + pw + 216, height = py + ph + 48;
    const double tmin = grid.thetas.front(), tmax = grid.thetas.back();
    const double ylo = std::log(grid.lbars.front()), yhi = std::log(grid.lbars.back());
    auto sx = [&](double theta) { return px + (theta - tmin) / (tmax - tmin) * pw; };
    auto sy = [&](double lbar) { return py + ph - (std::log(lbar) - ylo) / (yhi - ylo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\" "
        << "font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
    if (!title.empty())
        svg << "<text x=\"" << px << "\" y=\"22\" font-size=\"15\">" << title << "</text>\n";

    const std::size_t nt = grid.thetas.size(), nl = grid.lbars.size();
    for (std::size_t i = 0; i < nt; ++i) {
        const double x_lo =
            i == 0 ? tmin : 0.5 * (grid.thetas[i - 1] + grid.thetas[i]);
        const double x_hi =
            i + 1 == nt ? tmax : 0.5 * (grid.thetas[i] + grid.thetas[i + 1]);
        std::size_t j = 0;
        while (j < nl) {
            const char* color = fill_of(grid.at(static_cast<int>(i), static_cast<int>(j)));
            std::size_t j_end = j;
            while (j_end + 1 < nl &&
                   fill_of(grid.at(static_cast<int>(i), static_cast<int>(j_end + 1))) == color)
                ++j_end;
            const double lb_lo =
                j == 0 ? grid.lbars.front() : std::sqrt(grid.lbars[j - 1] * grid.lbars[j]);
            const double lb_hi = j_end + 1 == nl
                                     ? grid.lbars.back()
                                     : std::sqrt(grid.lbars[j_end] * grid.lbars[j_end + 1]);
            svg << "<rect x=\"" << detail::fmt2(sx(x_lo)) << "\" y=\"" << detail::fmt2(sy(lb_hi))
                << "\" width=\"" << detail::fmt2(sx(x_hi) - sx(x_lo)) << "\" height=\""
                << detail::fmt2(sy(lb_lo) - sy(lb_hi)) << "\" fill=\"" << color << "\"/>\n";
            j = j_end + 1;
        }
    }

    for (const LocusPolyline& locus : grid.loci) {
        std::vector<std::string> run;
        auto flush = [&] {
            if (run.size() >= 2) {
                svg << "<polyline fill=\"none\" stroke=\"" << detail::locus_color(locus.name)
                    << "\" stroke-width=\"1.6\"";
                if (locus.dashed) svg << " stroke-dasharray=\"6 4\"";
                svg << " points=\"";
                for (std::size_t k = 0; k < run.size(); ++k)
                    svg << (k ? " " : "") << run[k];
                svg << "\"/>\n";
            }
            run.clear();
        };
        for (const auto& p : locus.points) {
            if (p[1] < grid.lbars.front() || p[1] > grid.lbars.back()) {
                flush();
                continue;
            }
            run.push_back(detail::fmt2(sx(p[0])) + "," + detail::fmt2(sy(p[1])));
        }
        flush();
    }

    svg << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double theta = tmin + (tmax - tmin) * k / 4.0;
        const double x = sx(theta);
        svg << "<line x1=\"" << detail::fmt2(x) << "\" y1=\"" << py + ph << "\" x2=\""
            << detail::fmt2(x) << "\" y2=\"" << py + ph + 5 << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << detail::fmt2(x) << "\" y=\"" << py + ph + 18
            << "\" text-anchor=\"middle\">" << format9(round9(theta)) << "</text>\n";
    }
    const double tick_candidates[] = {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1, 2,
                                      5,    10,   20,   50,  100, 200, 500};
    for (double lb : tick_candidates) {
        if (lb < grid.lbars.front() * 0.999 || lb > grid.lbars.back() * 1.001) continue;
        const double y = sy(lb);
        svg << "<line x1=\"" << px - 5 << "\" y1=\"" << detail::fmt2(y) << "\" x2=\"" << px
            << "\" y2=\"" << detail::fmt2(y) << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << px - 8 << "\" y=\"" << detail::fmt2(y + 4)
            << "\" text-anchor=\"end\">" << format9(lb) << "</text>\n";
    }
    svg << "<text x=\"" << px + pw / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">theta (enclosed-sector TFP premium)</text>\n";
    svg << "<text x=\"16\" y=\"" << py + ph / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << py + ph / 2
        << ")\">lbar (workers per unit land, log scale)</text>\n";

    double ly = py + 12;
    const double lx = px + pw + 20;
    auto legend_swatch = [&](const char* color, const std::string& label) {
        svg << "<rect x=\"" << lx << "\" y=\"" << ly - 11 << "\" width=\"14\" height=\"14\" fill=\""
            << color << "\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
        svg << "<text x=\"" << lx + 20 << "\" y=\"" << ly << "\">" << label << "</text>\n";
        ly += 20;
    };
    if (f == FillBy::Comparison) {
        legend_swatch(detail::comparison_color(Comparison::Aligned), "aligned");
        legend_swatch(detail::comparison_color(Comparison::Excessive), "excessive");
        legend_swatch(detail::comparison_color(Comparison::Insufficient), "insufficient");
        legend_swatch(detail::comparison_color(Comparison::CoordinationFailure),
                      "coordination_failure");
    } else {
        legend_swatch(detail::regime_color(Regime::NoEnclosure), "no_enclosure");
        legend_swatch(detail::regime_color(Regime::Partial), "partial");
        legend_swatch(detail::regime_color(Regime::Full), "full");
        legend_swatch(detail::regime_color(Regime::Multiple), "multiple");
    }
    ly += 8;
    for (const LocusPolyline& locus : grid.loci) {
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 24 << "\" y2=\""
            << ly - 4 << "\" stroke=\"" << detail::locus_color(locus.name)
            << "\" stroke-width=\"1.6\"";
        if (locus.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << "/>\n";
        svg << "<text x=\"" << lx + 30 << "\" y=\"" << ly << "\">" << locus.name << "</text>\n";
        ly += 18;
    }
    svg << "</svg>\n";
    return svg.str();
}

namespace detail {
inline std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}
} // namespace detail

// flat configuration text: one "key = value" per line, '#' starts a comment
inline std::map<std::string, std::string> parse_key_value(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = detail::trim(line);
        if (body.empty()) continue;
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value, got \"" + body + "\"");
        const std::string key = detail::trim(body.substr(0, eq));
        const std::string val = detail::trim(body.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = val;
    }
    return kv;
}

inline std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    return parse_key_value(f);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path);
}

} // namespace enclose
