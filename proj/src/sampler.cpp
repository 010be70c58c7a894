#include "retfields/sampler.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

#include "retfields/electrodynamics.hpp"
#include "retfields/errors.hpp"
#include "retfields/fields.hpp"
#include "retfields/parallel.hpp"
#include "retfields/retarded.hpp"

namespace retfields {

namespace {

const std::set<std::string> scalar_quantities{"tau", "T", "u", "z", "phi"};
const std::set<std::string> vector_quantities{"e", "v", "a", "E", "B", "A"};

bool is_scaled(const std::string& q) { return q == "E" || q == "B" || q == "A" || q == "phi"; }

double axis_value(const AxisSpec& ax, long k)
{
    if (ax.count == 1)
        return ax.min;
    return ax.min + (ax.max - ax.min) * static_cast<double>(k) / static_cast<double>(ax.count - 1);
}

void validate_axis(const AxisSpec& ax, const char* name)
{
    if (ax.count < 1)
        throw std::invalid_argument(std::string("grid axis ") + name + ": count must be >= 1");
    if (!(ax.min <= ax.max))
        throw std::invalid_argument(std::string("grid axis ") + name + ": need min <= max");
}

void append_number(std::string& out, double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

} // namespace

void sample_grid(const Trajectory& traj, const GridSpec& grid, const SampleOptions& opt,
                 std::ostream& os)
{
    validate_axis(grid.x1, "x1");
    validate_axis(grid.x2, "x2");
    validate_axis(grid.x3, "x3");
    validate_axis(grid.t, "t");
    if (grid.quantities.empty())
        throw std::invalid_argument("grid: quantity list is empty");
    {
        std::set<std::string> seen;
        for (const auto& q : grid.quantities) {
            if (!scalar_quantities.count(q) && !vector_quantities.count(q))
                throw std::invalid_argument("grid: unknown quantity '" + q + "'");
            if (!seen.insert(q).second)
                throw std::invalid_argument("grid: duplicate quantity '" + q + "'");
        }
    }
    const long total_points = [&] {
        long n = 1;
        for (const AxisSpec* ax : {&grid.x1, &grid.x2, &grid.x3, &grid.t}) {
            if (ax->count > grid.max_points / n)
                throw std::invalid_argument("grid: more than max_points ("
                                            + std::to_string(grid.max_points) + ") samples");
            n *= ax->count;
        }
        return n;
    }();

    // admissibility up to the largest sampled time decides the whole run
    speed_bound(traj, std::max(grid.t.min, grid.t.max));

    const bool want_field = std::count(grid.quantities.begin(), grid.quantities.end(), "E") ||
                            std::count(grid.quantities.begin(), grid.quantities.end(), "B");

    if (opt.format == OutputFormat::csv) {
        std::string header = "x1,x2,x3,t,status";
        for (const auto& q : grid.quantities) {
            if (scalar_quantities.count(q)) {
                header += "," + q;
            } else {
                header += "," + q + "_x," + q + "_y," + q + "_z";
            }
        }
        os << header << "\n";
    }

    const long n2 = grid.x2.count, n3 = grid.x3.count, nt = grid.t.count;
    auto point_of = [&](long idx) {
        const long it = idx % nt;
        const long i3 = (idx / nt) % n3;
        const long i2 = (idx / (nt * n3)) % n2;
        const long i1 = idx / (nt * n3 * n2);
        return FieldPoint{{axis_value(grid.x1, i1), axis_value(grid.x2, i2),
                           axis_value(grid.x3, i3)},
                          axis_value(grid.t, it)};
    };

    auto format_row = [&](const FieldPoint& p, std::string& row) {
        row.clear();
        const RetardedSolution sol = retarded_time(traj, p.r, p.t, opt.tolerance);
        const bool singular = sol.delay <= opt.tolerance;

        FundamentalFields f;
        Vec3 E, B;
        if (!singular) {
            const Kinematics k = traj.eval(sol.tau, 2);
            f.tau = sol.tau;
            f.T = sol.delay;
            f.r12 = p.r - k.position;
            f.e = f.r12 / norm(f.r12);
            f.v = k.velocity;
            f.a = k.acceleration;
            f.u = 1.0 / f.T;
            f.z = 1.0 / (1.0 - dot(f.e, f.v));
            if (want_field) {
                E = e_explicit(f);
                B = b_field(f, E);
            }
        }
        auto value3 = [&](const std::string& q) -> Vec3 {
            if (q == "e")
                return f.e;
            if (q == "v")
                return f.v;
            if (q == "a")
                return f.a;
            if (q == "E")
                return E;
            if (q == "B")
                return B;
            return f.v * (f.u * f.z); // A
        };
        auto value1 = [&](const std::string& q) -> double {
            if (q == "tau")
                return f.tau;
            if (q == "T")
                return f.T;
            if (q == "u")
                return f.u;
            if (q == "z")
                return f.z;
            return f.u * f.z; // phi
        };

        if (opt.format == OutputFormat::csv) {
            append_number(row, p.r[0]);
            row += ',';
            append_number(row, p.r[1]);
            row += ',';
            append_number(row, p.r[2]);
            row += ',';
            append_number(row, p.t);
            row += singular ? ",on_trajectory" : ",ok";
            for (const auto& q : grid.quantities) {
                const int comps = scalar_quantities.count(q) ? 1 : 3;
                if (singular) {
                    for (int c = 0; c < comps; ++c)
                        row += ',';
                    continue;
                }
                const double s = is_scaled(q) ? opt.scale : 1.0;
                if (comps == 1) {
                    row += ',';
                    append_number(row, s * value1(q));
                } else {
                    const Vec3 v = value3(q);
                    for (int c = 0; c < 3; ++c) {
                        row += ',';
                        append_number(row, s * v[c]);
                    }
                }
            }
        } else {
            row += "{\"x1\":";
            append_number(row, p.r[0]);
            row += ",\"x2\":";
            append_number(row, p.r[1]);
            row += ",\"x3\":";
            append_number(row, p.r[2]);
            row += ",\"t\":";
            append_number(row, p.t);
            row += singular ? ",\"status\":\"on_trajectory\"" : ",\"status\":\"ok\"";
            if (!singular) {
                for (const auto& q : grid.quantities) {
                    const double s = is_scaled(q) ? opt.scale : 1.0;
                    row += ",\"" + q + "\":";
                    if (scalar_quantities.count(q)) {
                        append_number(row, s * value1(q));
                    } else {
                        const Vec3 v = value3(q);
                        row += '[';
                        append_number(row, s * v[0]);
                        row += ',';
                        append_number(row, s * v[1]);
                        row += ',';
                        append_number(row, s * v[2]);
                        row += ']';
                    }
                }
            }
            row += '}';
        }
        row += '\n';
    };

    const int threads = resolve_threads(opt.threads);
    const long chunk = std::max(1L, opt.chunk);
    std::vector<std::string> rows(static_cast<std::size_t>(std::min(chunk, total_points)));
    for (long begin = 0; begin < total_points; begin += chunk) {
        const long count = std::min(chunk, total_points - begin);
        parallel_for(count, threads, [&](long i) { format_row(point_of(begin + i), rows[i]); });
        for (long i = 0; i < count; ++i)
            os << rows[i];
    }
    os.flush();
}

} // namespace retfields
