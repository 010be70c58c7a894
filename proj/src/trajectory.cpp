#include "retfields/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "retfields/errors.hpp"

namespace retfields {

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

bool finite(const Vec3& v)
{
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

// Real roots of a3 x^3 + a2 x^2 + a1 x + a0, appended to out. Used only to
// enumerate candidate extrema of per-segment speed polynomials, so a spurious
// extra candidate is harmless but a missed root is not.
void solve_cubic(double a3, double a2, double a1, double a0, std::vector<double>& out)
{
    const double scale = std::max({std::fabs(a3), std::fabs(a2), std::fabs(a1), std::fabs(a0)});
    if (scale == 0.0)
        return;
    if (std::fabs(a3) <= 1e-14 * scale) {
        // quadratic (or lower) degree
        if (std::fabs(a2) <= 1e-14 * scale) {
            if (std::fabs(a1) > 1e-14 * scale)
                out.push_back(-a0 / a1);
            return;
        }
        const double disc = a1 * a1 - 4.0 * a2 * a0;
        if (disc < 0.0)
            return;
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (a1 + std::copysign(sq, a1));
        out.push_back(q / a2);
        if (q != 0.0)
            out.push_back(a0 / q);
        else
            out.push_back(0.0);
        return;
    }
    // depressed form x = y - p/3: y^3 + A y + B
    const double p = a2 / a3;
    const double q = a1 / a3;
    const double r = a0 / a3;
    const double A = q - p * p / 3.0;
    const double B = r - p * q / 3.0 + 2.0 * p * p * p / 27.0;
    const double shift = -p / 3.0;
    const double disc = 0.25 * B * B + A * A * A / 27.0;
    std::vector<double> ys;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double t1 = -0.5 * B + sq;
        const double t2 = -0.5 * B - sq;
        ys.push_back(std::cbrt(t1) + std::cbrt(t2));
    } else if (A == 0.0) {
        ys.push_back(std::cbrt(-B));
    } else {
        // three real roots, trigonometric form
        const double m = 2.0 * std::sqrt(-A / 3.0);
        const double arg = std::clamp(3.0 * B / (A * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            ys.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0));
    }
    for (double y : ys) {
        double x = y + shift;
        // two Newton polish steps on the original cubic
        for (int it = 0; it < 2; ++it) {
            const double f = ((a3 * x + a2) * x + a1) * x + a0;
            const double df = (3.0 * a3 * x + 2.0 * a2) * x + a1;
            if (df != 0.0)
                x -= f / df;
        }
        out.push_back(x);
    }
}

Kinematics eval_path(const StaticPath& p, double, int)
{
    Kinematics k;
    k.position = p.position;
    return k;
}

Kinematics eval_path(const UniformPath& p, double t, int order)
{
    Kinematics k;
    k.position = p.position + p.velocity * t;
    if (order >= 1)
        k.velocity = p.velocity;
    return k;
}

Kinematics eval_path(const CircularPath& p, double t, int order)
{
    const double ph = p.omega * t + p.phase;
    const double c = std::cos(ph), s = std::sin(ph);
    const double R = p.radius, w = p.omega;
    Kinematics k;
    k.position = p.center + Vec3{R * c, R * s, 0.0};
    if (order >= 1)
        k.velocity = {-R * w * s, R * w * c, 0.0};
    if (order >= 2)
        k.acceleration = {-R * w * w * c, -R * w * w * s, 0.0};
    if (order >= 3)
        k.jerk = {R * w * w * w * s, -R * w * w * w * c, 0.0};
    return k;
}

Kinematics eval_path(const OscillationPath& p, double t, int order)
{
    const double ph = p.omega * t + p.phase;
    const double s = std::sin(ph), c = std::cos(ph);
    const double A = p.amplitude, w = p.omega;
    Kinematics k;
    k.position = p.center + p.axis * (A * s);
    if (order >= 1)
        k.velocity = p.axis * (A * w * c);
    if (order >= 2)
        k.acceleration = p.axis * (-A * w * w * s);
    if (order >= 3)
        k.jerk = p.axis * (-A * w * w * w * c);
    return k;
}

Kinematics eval_path(const CubicSplinePath& p, double t, int order)
{
    Kinematics k;
    if (t < p.knots.front()) {
        k.position = p.positions.front() + p.velocities.front() * (t - p.knots.front());
        if (order >= 1)
            k.velocity = p.velocities.front();
        return k;
    }
    if (t > p.knots.back()) {
        k.position = p.positions.back() + p.velocities.back() * (t - p.knots.back());
        if (order >= 1)
            k.velocity = p.velocities.back();
        return k;
    }
    const auto it = std::upper_bound(p.knots.begin(), p.knots.end(), t);
    const std::size_t seg = std::min(p.coeff.size() - 1,
                                     static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                                         0, it - p.knots.begin() - 1)));
    const double dt = t - p.knots[seg];
    const auto& c = p.coeff[seg];
    k.position = c[0] + c[1] * dt + c[2] * (dt * dt) + c[3] * (dt * dt * dt);
    if (order >= 1)
        k.velocity = c[1] + c[2] * (2.0 * dt) + c[3] * (3.0 * dt * dt);
    if (order >= 2)
        k.acceleration = c[2] * 2.0 + c[3] * (6.0 * dt);
    if (order >= 3)
        k.jerk = c[3] * 6.0;
    return k;
}

// sup |velocity| on one spline segment restricted to local time [0, L].
double segment_speed_sup(const std::array<Vec3, 4>& c, double L)
{
    const Vec3 c1 = c[1], c2 = c[2], c3 = c[3];
    auto speed = [&](double dt) {
        return norm(c1 + c2 * (2.0 * dt) + c3 * (3.0 * dt * dt));
    };
    double best = std::max(speed(0.0), speed(L));
    // d|w|^2/ddt = 2 <w, a> is the cubic below in dt
    std::vector<double> roots;
    solve_cubic(18.0 * dot(c3, c3), 18.0 * dot(c2, c3), 6.0 * dot(c1, c3) + 4.0 * dot(c2, c2),
                2.0 * dot(c1, c2), roots);
    for (double r : roots)
        if (r > 0.0 && r < L)
            best = std::max(best, speed(r));
    return best;
}

} // namespace

namespace detail {

// Supremum of |w| over (-inf, stop]; no admissibility throw, callers decide.
double speed_sup(const Trajectory& traj, double stop)
{
    return std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, StaticPath>) {
                return 0.0;
            } else if constexpr (std::is_same_v<P, UniformPath>) {
                return norm(p.velocity);
            } else if constexpr (std::is_same_v<P, CircularPath>) {
                return std::fabs(p.radius * p.omega);
            } else if constexpr (std::is_same_v<P, OscillationPath>) {
                return std::fabs(p.amplitude * p.omega);
            } else {
                static_assert(std::is_same_v<P, CubicSplinePath>);
                double best = norm(p.velocities.front());
                for (std::size_t i = 0; i + 1 < p.knots.size(); ++i) {
                    if (p.knots[i] >= stop)
                        break;
                    const double L = std::min(stop, p.knots[i + 1]) - p.knots[i];
                    best = std::max(best, segment_speed_sup(p.coeff[i], L));
                }
                return best;
            }
        },
        traj.rep());
}

double accel_sup(const Trajectory& traj, double stop)
{
    return std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, StaticPath>) {
                return 0.0;
            } else if constexpr (std::is_same_v<P, UniformPath>) {
                return 0.0;
            } else if constexpr (std::is_same_v<P, CircularPath>) {
                return std::fabs(p.radius * p.omega * p.omega);
            } else if constexpr (std::is_same_v<P, OscillationPath>) {
                return std::fabs(p.amplitude * p.omega * p.omega);
            } else {
                static_assert(std::is_same_v<P, CubicSplinePath>);
                // |a(dt)|^2 is a convex quadratic in dt, so segment endpoints
                // dominate; extrapolation regions have a = 0.
                double best = 0.0;
                for (std::size_t i = 0; i + 1 < p.knots.size(); ++i) {
                    if (p.knots[i] >= stop)
                        break;
                    const double L = std::min(stop, p.knots[i + 1]) - p.knots[i];
                    const auto& c = p.coeff[i];
                    best = std::max({best, norm(c[2] * 2.0), norm(c[2] * 2.0 + c[3] * (6.0 * L))});
                }
                return best;
            }
        },
        traj.rep());
}

} // namespace detail

Trajectory Trajectory::static_point(const Vec3& position)
{
    require(finite(position), "static trajectory: position must be finite");
    return Trajectory(StaticPath{position});
}

Trajectory Trajectory::uniform(const Vec3& position, const Vec3& velocity)
{
    require(finite(position) && finite(velocity), "uniform trajectory: parameters must be finite");
    return Trajectory(UniformPath{position, velocity});
}

Trajectory Trajectory::circular(const Vec3& center, double radius, double omega, double phase)
{
    require(finite(center) && std::isfinite(radius) && std::isfinite(omega) && std::isfinite(phase),
            "circular trajectory: parameters must be finite");
    require(radius >= 0.0, "circular trajectory: radius must be >= 0");
    return Trajectory(CircularPath{center, radius, omega, phase});
}

Trajectory Trajectory::linear_oscillation(const Vec3& center, const Vec3& axis, double amplitude,
                                          double omega, double phase)
{
    require(finite(center) && finite(axis) && std::isfinite(amplitude) && std::isfinite(omega) &&
                std::isfinite(phase),
            "oscillating trajectory: parameters must be finite");
    require(amplitude >= 0.0, "oscillating trajectory: amplitude must be >= 0");
    require(norm(axis) > 0.0, "oscillating trajectory: axis must be nonzero");
    return Trajectory(OscillationPath{center, normalized(axis), amplitude, omega, phase});
}

Trajectory Trajectory::piecewise_cubic(std::vector<double> knots, std::vector<Vec3> positions,
                                       std::vector<Vec3> velocities)
{
    require(knots.size() >= 2, "spline trajectory: need at least two knots");
    require(knots.size() == positions.size() && knots.size() == velocities.size(),
            "spline trajectory: knots, positions and velocities must have equal lengths");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        require(std::isfinite(knots[i]) && finite(positions[i]) && finite(velocities[i]),
                "spline trajectory: samples must be finite");
        if (i > 0)
            require(knots[i] > knots[i - 1], "spline trajectory: knots must be strictly increasing");
    }
    CubicSplinePath p;
    p.coeff.resize(knots.size() - 1);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double h = knots[i + 1] - knots[i];
        const Vec3 x1 = positions[i], x2 = positions[i + 1];
        const Vec3 v1 = velocities[i], v2 = velocities[i + 1];
        p.coeff[i] = {x1, v1, (x2 - x1) * (3.0 / (h * h)) - (v1 * 2.0 + v2) * (1.0 / h),
                      (x1 - x2) * (2.0 / (h * h * h)) + (v1 + v2) * (1.0 / (h * h))};
    }
    p.knots = std::move(knots);
    p.positions = std::move(positions);
    p.velocities = std::move(velocities);
    return Trajectory(std::move(p));
}

Trajectory::Kind Trajectory::kind() const
{
    switch (rep_.index()) {
    case 0: return Kind::static_point;
    case 1: return Kind::uniform;
    case 2: return Kind::circular;
    case 3: return Kind::linear_oscillation;
    default: return Kind::piecewise_cubic;
    }
}

Kinematics Trajectory::eval(double t, int order) const
{
    return std::visit([&](const auto& p) { return eval_path(p, t, order); }, rep_);
}

Vec3 Trajectory::position(double t) const { return eval(t, 0).position; }
Vec3 Trajectory::velocity(double t) const { return eval(t, 1).velocity; }
Vec3 Trajectory::acceleration(double t) const { return eval(t, 2).acceleration; }

double speed_bound(const Trajectory& traj, double stop_time)
{
    const double q = detail::speed_sup(traj, stop_time);
    if (q >= 1.0)
        throw not_admissible_error("trajectory speed bound " + std::to_string(q) +
                                   " reaches the speed of light");
    return q;
}

double accel_bound(const Trajectory& traj, double stop_time)
{
    return detail::accel_sup(traj, stop_time);
}

AdmissibilityReport check_admissible(const Trajectory& traj, double stop_time)
{
    AdmissibilityReport rep;
    rep.stop_time = stop_time;
    rep.speed_bound = detail::speed_sup(traj, stop_time);
    rep.accel_bound = detail::accel_sup(traj, stop_time);
    rep.admissible = rep.speed_bound < 1.0;
    return rep;
}

double speed_bound_from_kinetic(double kinetic, double rest_mass)
{
    require(kinetic >= 0.0 && rest_mass > 0.0,
            "kinetic speed bound: need kinetic >= 0 and rest_mass > 0");
    const double g = 1.0 + kinetic / rest_mass; // Lorentz factor, c = 1
    return std::sqrt(1.0 - 1.0 / (g * g));
}

double proper_time(const Trajectory& traj, double t0, double t1)
{
    require(t0 <= t1, "proper_time: need t0 <= t1");
    if (t0 == t1)
        return 0.0;
    auto integrand = [&](double t) {
        const double v2 = norm2(traj.velocity(t));
        if (v2 >= 1.0 + 1e-13)
            throw not_admissible_error("proper_time: speed reaches c inside the interval");
        return std::sqrt(std::max(0.0, 1.0 - v2));
    };
    // integrand is smooth except for kinks at spline knots; split there
    std::vector<double> cuts{t0};
    if (const auto* s = std::get_if<CubicSplinePath>(&traj.rep()))
        for (double k : s->knots)
            if (k > t0 && k < t1)
                cuts.push_back(k);
    cuts.push_back(t1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            integrand, cuts[i], cuts[i + 1], 12, 1e-10);
    return total;
}

double significance_interval(double delta, double v, double stop_time)
{
    require(delta >= 0.0 && stop_time >= 0.0, "significance_interval: need delta, t1 >= 0");
    require(v >= 0.0 && v < 1.0, "significance_interval: need 0 <= v < 1");
    return (delta + 2.0 * v * stop_time) / (1.0 - v);
}

// ---------------------------------------------------------------------------
// Boosts.

Boost::Boost(double speed, const Vec3& axis) : speed_(speed)
{
    require(std::isfinite(speed) && std::fabs(speed) < 1.0, "boost: need |u| < 1");
    require(finite(axis) && norm(axis) > 0.0, "boost: axis must be a nonzero vector");
    axis_ = normalized(axis);
    gamma_ = 1.0 / std::sqrt(1.0 - speed_ * speed_);
}

Event boost_event(const Boost& b, const Event& ev)
{
    const double u = b.speed(), g = b.gamma();
    const double rpar = dot(ev.r, b.axis());
    Event out;
    out.r = ev.r + b.axis() * (g * (rpar - u * ev.t) - rpar);
    out.t = g * (ev.t - u * rpar);
    return out;
}

namespace {

// Orthonormal frame whose third row is `axis`; apply() expresses a vector in
// that frame, apply_transpose() maps frame components back.
struct Rotation {
    std::array<Vec3, 3> rows;
    Vec3 apply(const Vec3& v) const { return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)}; }
    Vec3 apply_transpose(const Vec3& v) const
    {
        return rows[0] * v[0] + rows[1] * v[1] + rows[2] * v[2];
    }
};

Rotation frame_with_z_axis(const Vec3& axis)
{
    const Vec3 a = normalized(axis);
    const Vec3 h = std::fabs(a[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 b1 = normalized(h - a * dot(h, a));
    const Vec3 b2 = cross(a, b1);
    return Rotation{{b1, b2, a}};
}

} // namespace

BoostedTrajectory boost_trajectory(const Trajectory& traj, const Boost& b, const BoostOptions& opt)
{
    require(opt.window_begin < opt.window_end, "boost_trajectory: empty resampling window");
    require(opt.samples >= 2, "boost_trajectory: need at least two samples");
    if (detail::speed_sup(traj, opt.window_end) >= 1.0)
        throw not_admissible_error("boost_trajectory: trajectory not admissible on the window");

    const Rotation R = frame_with_z_axis(b.axis());
    const double u = b.speed(), g = b.gamma();

    auto frame_time = [&](double t) { return g * (t - u * R.apply(traj.position(t))[2]); };
    // dt'/dt = gamma (1 - u w_z) >= gamma (1 - |u| q) > 0, so t'(t) is
    // strictly increasing and safeguarded Newton inversion cannot stall.
    auto invert = [&](double tp, double guess) {
        double lo = opt.window_begin, hi = opt.window_end;
        double t = std::clamp(guess, lo, hi);
        for (int it = 0;; ++it) {
            const Kinematics k = traj.eval(t, 1);
            const double f = g * (t - u * dot(R.rows[2], k.position)) - tp;
            if (std::fabs(f) <= 1e-13 * (1.0 + std::fabs(tp)))
                return t;
            if (it > 200)
                throw iteration_limit_error("boost_trajectory: frame-time inversion stalled");
            (f > 0.0 ? hi : lo) = t;
            const double df = g * (1.0 - u * dot(R.rows[2], k.velocity));
            double next = t - f / df;
            if (!(next > lo && next < hi))
                next = 0.5 * (lo + hi);
            t = next;
        }
    };

    auto transform_at = [&](double t) {
        const Kinematics k = traj.eval(t, 1);
        const Vec3 r = R.apply(k.position);
        const Vec3 w = R.apply(k.velocity);
        const double denom = 1.0 - u * w[2];
        const Vec3 rp{r[0], r[1], g * (r[2] - u * t)};
        const Vec3 wp{w[0] / (g * denom), w[1] / (g * denom), (w[2] - u) / denom};
        return std::pair<Vec3, Vec3>{R.apply_transpose(rp), R.apply_transpose(wp)};
    };

    const double tp_lo = frame_time(opt.window_begin);
    const double tp_hi = frame_time(opt.window_end);
    const int n = opt.samples;

    std::vector<double> knots(n);
    std::vector<Vec3> pos(n), vel(n);
    double t_prev = opt.window_begin;
    for (int j = 0; j < n; ++j) {
        const double tp = tp_lo + (tp_hi - tp_lo) * j / (n - 1);
        const double t = invert(tp, t_prev);
        t_prev = t;
        const auto [rp, wp] = transform_at(t);
        knots[j] = tp;
        pos[j] = rp;
        vel[j] = wp;
    }

    BoostedTrajectory out{Trajectory::piecewise_cubic(knots, pos, vel), 0.0};

    // Hermite error peaks near segment midpoints; report the worst deviation
    // from the exact transform there.
    t_prev = opt.window_begin;
    for (int j = 0; j + 1 < n; ++j) {
        const double tpm = 0.5 * (knots[j] + knots[j + 1]);
        const double t = invert(tpm, t_prev);
        t_prev = t;
        const auto [rp, wp] = transform_at(t);
        out.interpolation_error =
            std::max(out.interpolation_error, norm(out.trajectory.position(tpm) - rp));
    }
    return out;
}

} // namespace retfields
