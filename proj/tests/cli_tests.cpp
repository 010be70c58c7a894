// End-to-end tests that drive the installed CLI binary through a shell.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_count = 0;

RunResult run(const std::string& args, const std::string& env = "")
{
    const std::string tag = std::to_string(run_count++);
    const std::string out = "cli_out_" + tag + ".txt";
    const std::string err = "cli_err_" + tag + ".txt";
    const std::string cmd =
        env + (env.empty() ? "" : " ") + RETFIELDS_CLI_PATH + " " + args + " >" + out + " 2>" + err;
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    std::remove(out.c_str());
    std::remove(err.c_str());
    return r;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const json& content)
        : path("cli_tmp_" + name + ".json")
    {
        std::ofstream(path) << content.dump(2);
    }
    explicit TempFile(const std::string& name) : path("cli_tmp_" + name + ".json") {}
    ~TempFile() { std::remove(path.c_str()); }
};

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

const json static_origin{{"kind", "static"}, {"position", {0, 0, 0}}};
const json circular_cfg{
    {"kind", "circular"}, {"center", {0, 0, 0}}, {"radius", 1.0}, {"omega", 0.5}};

} // namespace

TEST_CASE("sample: Coulomb field on the x axis, full-precision CSV")
{
    TempFile traj("static", static_origin);
    const auto r = run("sample --traj " + traj.path + " --x1 1:2:3 --quantities E,phi");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "x1,x2,x3,t,status,E_x,E_y,E_z,phi");
    const double xs[] = {1.0, 1.5, 2.0};
    for (int i = 0; i < 3; ++i) {
        const auto cells = split_csv(lines[i + 1]);
        REQUIRE(cells.size() == 9);
        CHECK(std::stod(cells[0]) == xs[i]);
        CHECK(cells[4] == "ok");
        // %.17g columns reproduce the doubles exactly
        CHECK(std::stod(cells[5]) == 1.0 / (xs[i] * xs[i]));
        CHECK(std::stod(cells[6]) == 0.0);
        CHECK(std::stod(cells[7]) == 0.0);
        CHECK(std::stod(cells[8]) == 1.0 / xs[i]);
    }
}

TEST_CASE("sample: point on the trajectory is flagged, not computed")
{
    TempFile traj("static2", static_origin);
    const auto r = run("sample --traj " + traj.path + " --quantities E,z");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "0,0,0,0,on_trajectory,,,,");
}

TEST_CASE("sample: jsonl output parses and respects --scale")
{
    TempFile traj("circ", circular_cfg);
    const auto plain = run("sample --traj " + traj.path +
                           " --x1 2 --x2 0.5 --x3 0.5 --t 0:1:3 --format jsonl"
                           " --quantities tau,E,phi");
    REQUIRE(plain.code == 0);
    const auto scaled = run("sample --traj " + traj.path +
                            " --x1 2 --x2 0.5 --x3 0.5 --t 0:1:3 --format jsonl"
                            " --quantities tau,E,phi --scale 10");
    REQUIRE(scaled.code == 0);
    const auto pl = lines_of(plain.out);
    const auto sl = lines_of(scaled.out);
    REQUIRE(pl.size() == 3);
    REQUIRE(sl.size() == 3);
    for (std::size_t i = 0; i < pl.size(); ++i) {
        const json a = json::parse(pl[i]);
        const json b = json::parse(sl[i]);
        CHECK(a["status"] == "ok");
        CHECK(a["t"] == 0.5 * static_cast<double>(i));
        // scale multiplies fields and potentials, never the kinematics
        CHECK(b["tau"].get<double>() == a["tau"].get<double>());
        CHECK(b["phi"].get<double>() == doctest::Approx(10.0 * a["phi"].get<double>()).epsilon(1e-15));
        for (int c = 0; c < 3; ++c)
            CHECK(b["E"][c].get<double>() ==
                  doctest::Approx(10.0 * a["E"][c].get<double>()).epsilon(1e-15));
    }
}

TEST_CASE("sample: output is byte-identical for any worker count")
{
    TempFile traj("circ2", circular_cfg);
    const std::string args = "sample --traj " + traj.path +
                             " --x1 -2:2:7 --x2 -2:2:7 --x3 0.4 --t 0:1:3 --quantities E,B,tau,z";
    const auto one = run(args, "RETFIELDS_THREADS=1");
    const auto four = run(args, "RETFIELDS_THREADS=4");
    REQUIRE(one.code == 0);
    REQUIRE(four.code == 0);
    CHECK(one.out == four.out);
    CHECK(one.out.size() > 1000);
}

TEST_CASE("verify: passing run writes a JSON report")
{
    TempFile traj("circ3", circular_cfg);
    TempFile report("report");
    const auto r = run("verify --traj " + traj.path +
                       " --points 30 --maxwell-points 3 --json " + report.path);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("verification suite: PASS") != std::string::npos);
    const json j = json::parse(slurp(report.path));
    CHECK(j["pass"] == true);
    CHECK(j["points"] == 30);
    CHECK(j["checks"].size() > 10);
}

TEST_CASE("verify: inadmissible trajectory exits 1")
{
    TempFile traj("fast", json{{"kind", "uniform"},
                               {"position", {0, 0, 0}},
                               {"velocity", {1.5, 0, 0}}});
    const auto r = run("verify --traj " + traj.path + " --points 5");
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("boost: static source becomes an exact uniform trajectory")
{
    TempFile traj("static3", static_origin);
    TempFile out("boosted");
    const auto r = run("boost --traj " + traj.path + " --u 0.5 --axis z --out " + out.path);
    REQUIRE(r.code == 0);
    const json j = json::parse(slurp(out.path));
    CHECK(j["kind"] == "uniform");
    CHECK(j["position"] == json::array({0.0, 0.0, 0.0}));
    CHECK(j["velocity"] == json::array({0.0, 0.0, -0.5}));
    CHECK(j["metadata"]["exact"] == true);
    CHECK(j["metadata"]["source_kind"] == "static");
}

TEST_CASE("boost: round trip through an intermediate frame is the identity")
{
    TempFile traj("uni", json{{"kind", "uniform"},
                              {"position", {1, 0, 0}},
                              {"velocity", {0, 0.25, 0}}});
    TempFile mid("mid");
    TempFile back("back");
    REQUIRE(run("boost --traj " + traj.path + " --u 0.6 --axis y --out " + mid.path).code == 0);
    REQUIRE(run("boost --traj " + mid.path + " --u -0.6 --axis y --out " + back.path).code == 0);
    const json j = json::parse(slurp(back.path));
    CHECK(j["kind"] == "uniform");
    for (int c = 0; c < 3; ++c) {
        CHECK(j["position"][c].get<double>() == doctest::Approx(c == 0 ? 1.0 : 0.0).epsilon(1e-14));
        CHECK(j["velocity"][c].get<double>() == doctest::Approx(c == 1 ? 0.25 : 0.0).epsilon(1e-14));
    }
}

TEST_CASE("boost: accelerated source is resampled with an error estimate")
{
    TempFile traj("circ4", circular_cfg);
    TempFile out("boosted2");
    const auto r = run("boost --traj " + traj.path +
                       " --u 0.3 --axis x --window -5:5 --samples 401 --out " + out.path);
    REQUIRE(r.code == 0);
    const json j = json::parse(slurp(out.path));
    CHECK(j["kind"] == "piecewise-cubic");
    CHECK(j["knots"].size() == 401);
    CHECK(j["metadata"]["exact"] == false);
    CHECK(j["metadata"]["interpolation_error"].get<double>() < 1e-6);

    // without a window the resampling is refused
    TempFile out2("boosted3");
    CHECK(run("boost --traj " + traj.path + " --u 0.3 --out " + out2.path).code == 2);
}

TEST_CASE("info: bounds, proper time, derived speeds")
{
    TempFile traj("osc", json{{"kind", "linear-oscillation"},
                              {"center", {0, 0, 0}},
                              {"axis", {0, 0, 1}},
                              {"amplitude", 0.6},
                              {"omega", 1.0}});
    const auto r = run("info --traj " + traj.path +
                       " --t1 10 --proper-window 0:12.566370614359172"
                       " --kinetic 1 --mass 1 --delta 0.6 --v 0.6");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("kind:            linear-oscillation") != std::string::npos);
    CHECK(r.out.find("admissible:      yes") != std::string::npos);
    CHECK(r.out.find("speed bound:     0.6") != std::string::npos);
    // 4 E(0.6) on two full periods: 2 * 5.6723335777948966
    CHECK(r.out.find("proper time on [0, 12.5664]: 11.3447") != std::string::npos);
    // kinetic = mass gives sqrt(3)/2
    CHECK(r.out.find("0.866025") != std::string::npos);
    // (0.6 + 2*0.6*10) / 0.4 = 31.5
    CHECK(r.out.find("31.5") != std::string::npos);

    TempFile fast("fast2", json{{"kind", "uniform"},
                                {"position", {0, 0, 0}},
                                {"velocity", {0, 0, 1.0}}});
    CHECK(run("info --traj " + fast.path).code == 1);
}

TEST_CASE("exit codes for bad invocations")
{
    CHECK(run("sample").code == 2);                       // missing --traj
    CHECK(run("nonsense").code == 2);                     // unknown subcommand
    CHECK(run("--help").code == 0);
    CHECK(run("sample --help").code == 0);

    TempFile bad("bad", json{{"kind", "helix"}});
    const auto r = run("sample --traj " + bad.path);
    CHECK(r.code == 2);
    CHECK(r.err.find("$.kind") != std::string::npos);

    TempFile traj("static4", static_origin);
    CHECK(run("sample --traj " + traj.path + " --x1 1:2").code == 2); // malformed axis
    CHECK(run("sample --traj missing_file.json").code == 2);
    CHECK(run("sample --traj " + traj.path + " --quantities warp").code == 2);

    // superluminal source: admissibility failure, not a usage error
    TempFile fast("fast3", json{{"kind", "uniform"},
                                {"position", {0, 0, 0}},
                                {"velocity", {2, 0, 0}}});
    CHECK(run("sample --traj " + fast.path + " --x1 5").code == 1);
}
