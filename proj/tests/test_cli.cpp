// end-to-end checks of the installed `enclose` binary: spawns the real
// executable, captures its streams, and parses what it writes

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("enclose_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const fs::path err = work_dir() / "stderr.txt";
    const std::string cmd = std::string(ENCLOSE_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

int count_lines(const std::string& text) {
    int n = 0;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) ++n;
    return n;
}

} // namespace

TEST_CASE("solve reports every solver on one economy") {
    const RunResult text = run_cli("solve --theta 2 --lbar 1");
    REQUIRE(text.exit_code == 0);
    REQUIRE_THAT(text.out, ContainsSubstring("first_best"));
    REQUIRE_THAT(text.out, ContainsSubstring("decentralized"));
    REQUIRE_THAT(text.out, ContainsSubstring("net_output="));

    const RunResult json = run_cli("solve --theta 2 --lbar 1 --json");
    REQUIRE(json.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(json.out);
    REQUIRE_THAT(j["first_best"]["t_e"].get<double>(), WithinAbs(0.366317934, 1e-7));
    REQUIRE_THAT(j["second_best"]["t_e"].get<double>(), WithinAbs(0.419450500, 1e-7));
    REQUIRE(j["decentralized"]["regime"] == "partial");
    REQUIRE(j["composites"]["lambda1"] == 8.0);
    REQUIRE(j["externality"].is_object());
    REQUIRE(j["three_sector"].is_null());
}

TEST_CASE("solve marks the externality as unavailable away from the benchmark") {
    const RunResult r = run_cli("solve --theta 2 --mu 0.3 --json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    REQUIRE(j["externality"].is_null());
    REQUIRE_THAT(j["externality_note"].get<std::string>(), ContainsSubstring("benchmark"));
}

TEST_CASE("solve adds the manufacturing section when its parameters appear") {
    const RunResult r = run_cli("solve --theta 2 --p 1 --json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    REQUIRE(j["three_sector"].is_object());
    REQUIRE(j["three_sector"]["allocation"]["l_m"].get<double>() > 0.0);
}

TEST_CASE("configuration file feeds solve and flags override it") {
    const fs::path cfg = work_dir() / "econ.conf";
    std::ofstream(cfg) << "# sparse-commons example\n"
                       << "theta = 1.2\n"
                       << "lbar = 6\n";
    const RunResult from_file = run_cli("solve --config " + cfg.string() + " --json");
    REQUIRE(from_file.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(from_file.out);
    REQUIRE(j["environment"]["theta"] == 1.2);
    REQUIRE(j["decentralized"]["regime"] == "multiple");

    const RunResult overridden =
        run_cli("solve --config " + cfg.string() + " --theta 2 --json");
    REQUIRE(overridden.exit_code == 0);
    j = nlohmann::json::parse(overridden.out);
    REQUIRE(j["environment"]["theta"] == 2.0);
    REQUIRE(j["environment"]["lbar"] == 6.0);
    REQUIRE(j["decentralized"]["regime"] == "full");

    const RunResult missing = run_cli("solve --config " + (work_dir() / "nope.conf").string());
    REQUIRE(missing.exit_code == 3);
    REQUIRE_THAT(missing.err, ContainsSubstring("cannot open"));
}

TEST_CASE("thresholds prints the regime-boundary table") {
    const RunResult text = run_cli("thresholds --theta 1.2");
    REQUIRE(text.exit_code == 0);
    REQUIRE_THAT(text.out, ContainsSubstring("locus"));
    REQUIRE_THAT(text.out, ContainsSubstring("risk_dominance"));

    const RunResult json = run_cli("thresholds --theta 1.2 --json");
    REQUIRE(json.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(json.out);
    bool saw_cutoff = false;
    for (const auto& row : j["thresholds"])
        if (row["name"] == "risk_dominance") {
            saw_cutoff = true;
            REQUIRE_THAT(row["lbar"].get<double>(), WithinAbs(5.66295238, 1e-6));
        }
    REQUIRE(saw_cutoff);

    const RunResult diag = run_cli("thresholds --theta 2 --diagnostics --json");
    REQUIRE(diag.exit_code == 0);
    const std::string dump = nlohmann::json::parse(diag.out).dump();
    REQUIRE_THAT(dump, ContainsSubstring("monopoly_full_variant"));
}

TEST_CASE("sweep writes CSV to stdout or files next to a base path") {
    const std::string geometry =
        "--theta-steps 6 --lbar-steps 5 --solvers decentralized,second_best";
    const RunResult csv = run_cli("sweep " + geometry);
    REQUIRE(csv.exit_code == 0);
    REQUIRE(count_lines(csv.out) == 1 + 30);
    REQUIRE_THAT(csv.out, ContainsSubstring("decentralized_regime"));

    const RunResult json = run_cli("sweep " + geometry + " --json");
    REQUIRE(json.exit_code == 0);
    REQUIRE(nlohmann::json::parse(json.out)["cells"].size() == 30);

    const fs::path base = work_dir() / "map";
    const RunResult files = run_cli("sweep " + geometry + " --out " + base.string() + " --svg");
    REQUIRE(files.exit_code == 0);
    REQUIRE(fs::exists(base.string() + ".csv"));
    REQUIRE(fs::exists(base.string() + ".json"));
    REQUIRE(fs::exists(base.string() + ".svg"));
    REQUIRE(slurp(base.string() + ".svg").rfind("<svg", 0) == 0);

    const RunResult bad = run_cli("sweep " + geometry + " --svg");
    REQUIRE(bad.exit_code == 2);
    REQUIRE_THAT(bad.err, ContainsSubstring("--out"));
}

TEST_CASE("sweep geometry can come from a spec file") {
    const fs::path spec = work_dir() / "sweep.conf";
    std::ofstream(spec) << "theta_steps = 4\nlbar_steps = 3\nsolvers = decentralized\n";
    const RunResult r = run_cli("sweep --spec " + spec.string() + " --json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    REQUIRE(j["cells"].size() == 12);
    REQUIRE(j["spec"]["solvers"]["decentralized"] == true);
    REQUIRE(j["spec"]["solvers"]["first_best"] == false);
}

TEST_CASE("figure emits the canned panels") {
    const fs::path dir = work_dir() / "figs";
    fs::create_directories(dir);
    const RunResult r =
        run_cli("figure 7 --panel d --resolution 12 --out-dir " + dir.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(fs::exists(dir / "figure7d.csv"));
    REQUIRE(fs::exists(dir / "figure7d.json"));
    REQUIRE(fs::exists(dir / "figure7d.svg"));
    const nlohmann::json j = nlohmann::json::parse(slurp(dir / "figure7d.json"));
    REQUIRE(j["spec"]["base"]["mu"] == 1.0);
    REQUIRE(j["spec"]["base"]["tau"] == 1.0);

    REQUIRE(run_cli("figure 9 --out-dir " + dir.string()).exit_code == 2);
    REQUIRE(run_cli("figure 2 --panel a --out-dir " + dir.string()).exit_code == 2);
    REQUIRE(run_cli("figure 7 --panel e --out-dir " + dir.string()).exit_code == 2);
}

TEST_CASE("verify battery passes clean and catches an injected discrepancy") {
    const RunResult clean = run_cli("verify --agents 60 --step 0.005");
    REQUIRE(clean.exit_code == 0);
    REQUIRE_THAT(clean.out, ContainsSubstring("checks passed"));
    REQUIRE(clean.out.find("FAIL") == std::string::npos);

    const RunResult broken = run_cli("verify --agents 60 --step 0.005 --perturb 1.2");
    REQUIRE(broken.exit_code == 1);
    REQUIRE_THAT(broken.out, ContainsSubstring("FAIL"));

    const RunResult json = run_cli("verify --agents 60 --step 0.005 --json");
    REQUIRE(json.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(json.out);
    REQUIRE(j["passed"] == j["total"]);
}

TEST_CASE("parameter validation reaches the exit code") {
    const RunResult r = run_cli("solve --alpha 1.5");
    REQUIRE(r.exit_code == 2);
    REQUIRE_THAT(r.err, ContainsSubstring("alpha"));
    REQUIRE(run_cli("verify --step 0.5").exit_code == 2);
    REQUIRE(run_cli("sweep --solvers nobody").exit_code == 2);
}
