// Command-line front end: sample field grids, run the verification suite,
// transform trajectories between inertial frames, and summarize admissibility.
//
// Exit codes: 0 success, 1 admissibility/verification failure, 2 bad input.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "retfields/electrodynamics.hpp"
#include "retfields/errors.hpp"
#include "retfields/parallel.hpp"
#include "retfields/sampler.hpp"
#include "retfields/trajectory.hpp"
#include "retfields/trajectory_io.hpp"
#include "retfields/verify.hpp"

using namespace retfields;

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

AxisSpec parse_axis(const std::string& spec, const char* flag)
{
    const auto parts = split(spec, ':');
    try {
        if (parts.size() == 1) {
            AxisSpec ax;
            ax.min = ax.max = std::stod(parts[0]);
            ax.count = 1;
            return ax;
        }
        if (parts.size() == 3) {
            AxisSpec ax;
            ax.min = std::stod(parts[0]);
            ax.max = std::stod(parts[1]);
            ax.count = std::stol(parts[2]);
            return ax;
        }
    } catch (const std::exception&) {
        // fall through to the shared error below
    }
    throw std::invalid_argument(std::string(flag) + ": expected 'value' or 'min:max:count', got '" +
                                spec + "'");
}

Vec3 parse_vec3_arg(const std::string& spec, const char* flag)
{
    const auto parts = split(spec, ',');
    if (parts.size() == 3) {
        try {
            return {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
        } catch (const std::exception&) {
        }
    }
    throw std::invalid_argument(std::string(flag) + ": expected 'x,y,z', got '" + spec + "'");
}

Vec3 parse_axis_arg(const std::string& spec, const char* flag)
{
    if (spec == "x")
        return {1, 0, 0};
    if (spec == "y")
        return {0, 1, 0};
    if (spec == "z")
        return {0, 0, 1};
    return parse_vec3_arg(spec, flag);
}

const char* kind_name(Trajectory::Kind k)
{
    switch (k) {
    case Trajectory::Kind::static_point: return "static";
    case Trajectory::Kind::uniform: return "uniform";
    case Trajectory::Kind::circular: return "circular";
    case Trajectory::Kind::linear_oscillation: return "linear-oscillation";
    default: return "piecewise-cubic";
    }
}

struct SampleArgs {
    std::string traj, out = "-", format = "csv", quantities;
    std::string x1 = "0", x2 = "0", x3 = "0", t = "0";
    double tol = 1e-12, scale = 1.0;
    int threads = 0;
    long max_points = 100000000;
};

int cmd_sample(const SampleArgs& a)
{
    const Trajectory traj = load_trajectory(a.traj);
    GridSpec grid;
    grid.x1 = parse_axis(a.x1, "--x1");
    grid.x2 = parse_axis(a.x2, "--x2");
    grid.x3 = parse_axis(a.x3, "--x3");
    grid.t = parse_axis(a.t, "--t");
    grid.max_points = a.max_points;
    if (!a.quantities.empty()) {
        grid.quantities.clear();
        for (const auto& q : split(a.quantities, ','))
            if (!q.empty())
                grid.quantities.push_back(q);
    }
    SampleOptions opt;
    opt.tolerance = a.tol;
    opt.scale = a.scale;
    opt.threads = a.threads;
    opt.format = a.format == "jsonl" ? OutputFormat::jsonl : OutputFormat::csv;

    if (a.out == "-") {
        sample_grid(traj, grid, opt, std::cout);
    } else {
        std::ofstream os(a.out);
        if (!os)
            throw config_error("$", "cannot open output file '" + a.out + "'");
        sample_grid(traj, grid, opt, os);
    }
    return 0;
}

struct VerifyArgs {
    std::string traj, json_out;
    int points = 200, maxwell_points = 12, threads = 0;
    unsigned seed = 0;
    double tol = 1e-12;
    std::string rmin = "-3,-3,-3", rmax = "3,3,3";
    double tmin = -2.0, tmax = 2.0;
    double delay_min = 0.05, delay_max = 50.0;
};

int cmd_verify(const VerifyArgs& a)
{
    const Trajectory traj = load_trajectory(a.traj);
    SuiteOptions opt;
    opt.points = a.points;
    opt.maxwell_points = a.maxwell_points;
    opt.threads = a.threads;
    opt.tolerance = a.tol;
    opt.sampler.skip = a.seed;
    opt.sampler.r_min = parse_vec3_arg(a.rmin, "--rmin");
    opt.sampler.r_max = parse_vec3_arg(a.rmax, "--rmax");
    opt.sampler.t_min = a.tmin;
    opt.sampler.t_max = a.tmax;
    opt.sampler.delay_min = a.delay_min;
    opt.sampler.delay_max = a.delay_max;

    const SuiteReport report = suite(traj, opt);
    report.write_text(std::cout);
    if (!a.json_out.empty()) {
        std::ofstream os(a.json_out);
        if (!os)
            throw config_error("$", "cannot open output file '" + a.json_out + "'");
        os << report.to_json().dump(2) << "\n";
    }
    return report.pass ? 0 : 1;
}

struct BoostArgs {
    std::string traj, out, axis = "z", window;
    double u = 0.0;
    int samples = 257;
};

int cmd_boost(const BoostArgs& a)
{
    const Trajectory traj = load_trajectory(a.traj);
    const Boost b(a.u, parse_axis_arg(a.axis, "--axis"));
    nlohmann::json meta{{"boost_speed", a.u},
                        {"boost_axis", {b.axis()[0], b.axis()[1], b.axis()[2]}},
                        {"source_kind", kind_name(traj.kind())}};

    // Static and uniform sources stay uniform in any frame, so those two
    // kinds are transformed exactly instead of being resampled.
    if (traj.kind() == Trajectory::Kind::static_point ||
        traj.kind() == Trajectory::Kind::uniform) {
        speed_bound(traj, 0.0); // rejects superluminal uniform input
        Vec3 p0, w0;
        if (const auto* st = std::get_if<StaticPath>(&traj.rep())) {
            p0 = st->position;
        } else {
            const auto* un = std::get_if<UniformPath>(&traj.rep());
            p0 = un->position;
            w0 = un->velocity;
        }
        const double u = b.speed();
        const double wpar = dot(w0, b.axis());
        const double denom = 1.0 - u * wpar;
        const Vec3 wperp = w0 - b.axis() * wpar;
        const Vec3 vp = b.axis() * ((wpar - u) / denom) + wperp * (1.0 / (b.gamma() * denom));
        const Event e0 = boost_event(b, {p0, 0.0});
        const Vec3 origin_pos = e0.r - vp * e0.t; // boosted position at frame time 0
        meta["exact"] = true;
        const Trajectory out = norm(vp) == 0.0 ? Trajectory::static_point(origin_pos)
                                               : Trajectory::uniform(origin_pos, vp);
        save_trajectory(out, a.out, meta);
        std::cout << "wrote exact boosted " << kind_name(out.kind()) << " trajectory to " << a.out
                  << "\n";
        return 0;
    }

    if (a.window.empty())
        throw std::invalid_argument("--window min:max is required for this trajectory kind");
    const auto parts = split(a.window, ':');
    if (parts.size() != 2)
        throw std::invalid_argument("--window: expected 'min:max', got '" + a.window + "'");
    BoostOptions opt;
    opt.window_begin = std::stod(parts[0]);
    opt.window_end = std::stod(parts[1]);
    opt.samples = a.samples;

    const BoostedTrajectory bt = boost_trajectory(traj, b, opt);
    meta["exact"] = false;
    meta["window"] = {opt.window_begin, opt.window_end};
    meta["samples"] = opt.samples;
    meta["interpolation_error"] = bt.interpolation_error;
    save_trajectory(bt.trajectory, a.out, meta);
    std::cout << "wrote boosted trajectory (" << opt.samples << " knots, interpolation error "
              << bt.interpolation_error << ") to " << a.out << "\n";
    return 0;
}

struct InfoArgs {
    std::string traj;
    double t1 = 0.0;
    std::string proper_window;
    std::optional<double> delta, v, kinetic, mass;
};

int cmd_info(const InfoArgs& a)
{
    const Trajectory traj = load_trajectory(a.traj);
    const AdmissibilityReport rep = check_admissible(traj, a.t1);
    std::cout << "kind:            " << kind_name(traj.kind()) << "\n"
              << "stop time t1:    " << a.t1 << "\n"
              << "speed bound:     " << rep.speed_bound << "  (fraction of c)\n"
              << "accel bound:     " << rep.accel_bound << "\n"
              << "admissible:      " << (rep.admissible ? "yes" : "no") << "\n";
    if (!a.proper_window.empty()) {
        const auto parts = split(a.proper_window, ':');
        if (parts.size() != 2)
            throw std::invalid_argument("--proper-window: expected 'min:max'");
        const double t0 = std::stod(parts[0]), t1 = std::stod(parts[1]);
        std::cout << "proper time on [" << t0 << ", " << t1
                  << "]: " << proper_time(traj, t0, t1) << "\n";
    }
    if (a.kinetic && a.mass)
        std::cout << "speed for kinetic energy " << *a.kinetic << " (rest mass " << *a.mass
                  << "): " << speed_bound_from_kinetic(*a.kinetic, *a.mass) << "\n";
    if (a.delta && a.v)
        std::cout << "significance interval half-width: "
                  << significance_interval(*a.delta, *a.v, a.t1) << "\n";
    return rep.admissible ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"retarded-time electromagnetic fields of moving point charges (c = 1 units)"};
    app.require_subcommand(1);

    SampleArgs sa;
    CLI::App* sample = app.add_subcommand("sample", "evaluate fields on a space-time grid");
    sample->add_option("--traj", sa.traj, "trajectory JSON file")->required();
    sample->add_option("--x1", sa.x1, "x1 axis, 'value' or 'min:max:count' (default 0)");
    sample->add_option("--x2", sa.x2, "x2 axis (default 0)");
    sample->add_option("--x3", sa.x3, "x3 axis (default 0)");
    sample->add_option("--t", sa.t, "time axis (default 0)");
    sample->add_option("--quantities", sa.quantities,
                       "comma list from tau,T,e,v,a,u,z,E,B,A,phi (default all)");
    sample->add_option("--out", sa.out, "output file, '-' for stdout (default)");
    sample->add_option("--format", sa.format, "csv or jsonl (default csv)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sample->add_option("--tol", sa.tol, "retarded-time tolerance (default 1e-12)");
    sample->add_option("--scale", sa.scale, "multiplier for E, B, A, phi (default 1)");
    sample->add_option("--threads", sa.threads, "worker threads, 0 = auto (default)");
    sample->add_option("--max-points", sa.max_points, "grid size cap (default 1e8)");

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--traj", va.traj, "trajectory JSON file")->required();
    verify->add_option("--points", va.points, "sample points (default 200)");
    verify->add_option("--maxwell-points", va.maxwell_points,
                       "points for the FD residual checks (default 12)");
    verify->add_option("--seed", va.seed, "sampling sequence offset (default 0)");
    verify->add_option("--tol", va.tol, "retarded-time tolerance (default 1e-12)");
    verify->add_option("--threads", va.threads, "worker threads, 0 = auto");
    verify->add_option("--rmin", va.rmin, "sampling box corner 'x,y,z' (default -3,-3,-3)");
    verify->add_option("--rmax", va.rmax, "sampling box corner 'x,y,z' (default 3,3,3)");
    verify->add_option("--tmin", va.tmin, "sampling time range start (default -2)");
    verify->add_option("--tmax", va.tmax, "sampling time range end (default 2)");
    verify->add_option("--delay-min", va.delay_min, "accept delays >= this (default 0.05)");
    verify->add_option("--delay-max", va.delay_max, "accept delays <= this (default 50)");
    verify->add_option("--json", va.json_out, "also write the report as JSON to this file");

    BoostArgs ba;
    CLI::App* boost = app.add_subcommand("boost", "describe the trajectory in a boosted frame");
    boost->add_option("--traj", ba.traj, "trajectory JSON file")->required();
    boost->add_option("--u", ba.u, "boost speed, |u| < 1")->required();
    boost->add_option("--axis", ba.axis, "boost axis: x, y, z or 'ax,ay,az' (default z)");
    boost->add_option("--window", ba.window, "source-frame time window 'min:max' for resampling");
    boost->add_option("--samples", ba.samples, "resampling knot count (default 257)");
    boost->add_option("--out", ba.out, "output trajectory JSON file")->required();

    InfoArgs ia;
    CLI::App* info = app.add_subcommand("info", "admissibility and kinematic bounds");
    info->add_option("--traj", ia.traj, "trajectory JSON file")->required();
    info->add_option("--t1", ia.t1, "stop time for the bounds (default 0)");
    info->add_option("--proper-window", ia.proper_window, "report proper time over 'min:max'");
    info->add_option("--delta", ia.delta, "source confinement radius for the significance interval");
    info->add_option("--v", ia.v, "source confinement speed for the significance interval");
    info->add_option("--kinetic", ia.kinetic, "kinetic energy for a speed bound");
    info->add_option("--mass", ia.mass, "rest mass for the kinetic speed bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sample->parsed())
            return cmd_sample(sa);
        if (verify->parsed())
            return cmd_verify(va);
        if (boost->parsed())
            return cmd_boost(ba);
        return cmd_info(ia);
    } catch (const config_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const not_admissible_error& e) {
        std::cerr << "not admissible: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
