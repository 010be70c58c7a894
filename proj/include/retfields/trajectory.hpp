#ifndef RETFIELDS_TRAJECTORY_HPP
#define RETFIELDS_TRAJECTORY_HPP

#include <array>
#include <variant>
#include <vector>

#include "retfields/vec.hpp"

namespace retfields {

// Units: c = 1 throughout, so speeds are dimensionless fractions of the
// speed of light and times carry the same unit as lengths.

/// Position and its first three time derivatives at one instant.
/// eval(t, order) fills entries up to `order`; the rest stay zero.
struct Kinematics {
    Vec3 position;
    Vec3 velocity;
    Vec3 acceleration;
    Vec3 jerk;
};

struct Event {
    Vec3 r;
    double t = 0.0;
};

struct AdmissibilityReport {
    double stop_time = 0.0;
    double speed_bound = 0.0; // sup |w(t)| over t <= stop_time
    double accel_bound = 0.0; // sup |dw/dt| over t <= stop_time
    bool admissible = false;  // speed_bound < 1
};

// ---------------------------------------------------------------------------
// Trajectory kinds. Each parameter struct is the exact analytic description;
// Trajectory wraps a variant of them.

struct StaticPath {
    Vec3 position;
};

struct UniformPath {
    Vec3 position; // location at t = 0
    Vec3 velocity;
};

/// Circle of radius `radius` around `center`, in the plane z = center.z:
/// r(t) = center + radius (cos(omega t + phase), sin(omega t + phase), 0).
struct CircularPath {
    Vec3 center;
    double radius = 0.0;
    double omega = 0.0;
    double phase = 0.0;
};

/// r(t) = center + axis * amplitude * sin(omega t + phase), |axis| = 1.
struct OscillationPath {
    Vec3 center;
    Vec3 axis;
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;
};

/// Cubic Hermite interpolant through (knot[i], position[i], velocity[i]).
/// C^1 at the knots; outside the knot range it continues with the constant
/// end velocity, which keeps speed bounds valid on all of (-inf, t1].
struct CubicSplinePath {
    std::vector<double> knots;
    std::vector<Vec3> positions;
    std::vector<Vec3> velocities;
    // per-segment polynomial coefficients in the local time dt = t - knots[i]:
    // position = c0 + c1 dt + c2 dt^2 + c3 dt^3
    std::vector<std::array<Vec3, 4>> coeff;
};

class Trajectory {
public:
    enum class Kind { static_point, uniform, circular, linear_oscillation, piecewise_cubic };

    using Rep = std::variant<StaticPath, UniformPath, CircularPath, OscillationPath, CubicSplinePath>;

    static Trajectory static_point(const Vec3& position);
    static Trajectory uniform(const Vec3& position, const Vec3& velocity);
    static Trajectory circular(const Vec3& center, double radius, double omega, double phase = 0.0);
    static Trajectory linear_oscillation(const Vec3& center, const Vec3& axis, double amplitude,
                                         double omega, double phase = 0.0);
    static Trajectory piecewise_cubic(std::vector<double> knots, std::vector<Vec3> positions,
                                      std::vector<Vec3> velocities);

    Kind kind() const;
    const Rep& rep() const { return rep_; }

    Kinematics eval(double t, int order = 3) const;
    Vec3 position(double t) const;
    Vec3 velocity(double t) const;
    Vec3 acceleration(double t) const;

private:
    explicit Trajectory(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

// ---------------------------------------------------------------------------
// Admissibility and certified kinematic bounds.

/// sup |w(t)| for t in (-inf, stop_time]. Exact for the analytic kinds; for
/// splines the supremum over each segment is found from the critical points
/// of the polynomial |w|^2. Throws not_admissible_error if the bound is >= 1.
double speed_bound(const Trajectory& traj, double stop_time);

/// sup |dw/dt(t)| for t in (-inf, stop_time], by the same per-segment
/// polynomial analysis. (|a|^2 is convex on a segment, so only the segment
/// endpoints can attain the maximum.)
double accel_bound(const Trajectory& traj, double stop_time);

/// Non-throwing combined report.
AdmissibilityReport check_admissible(const Trajectory& traj, double stop_time);

/// Speed of a particle of rest mass m0 whose kinetic energy is `kinetic`:
/// q = sqrt(1 - 1/(1 + k/m0)^2) with c = 1, always < 1.
double speed_bound_from_kinetic(double kinetic, double rest_mass);

/// Elapsed proper time along the trajectory, integral of sqrt(1 - |w|^2) dt
/// over [t0, t1]. Adaptive Gauss-Kronrod, split at spline knots.
double proper_time(const Trajectory& traj, double t0, double t1);

/// Half-width a = (delta + 2 v t1) / (1 - v) of the spatial interval outside
/// which a source confined to |r| <= delta + v|t| cannot influence
/// measurements at |t| <= t1. (Signals travel at speed at most 1.)
double significance_interval(double delta, double v, double stop_time);

// ---------------------------------------------------------------------------
// Lorentz boosts.

/// Pure boost with velocity `speed` along the unit vector `axis`: the primed
/// frame moves at that velocity relative to the unprimed one.
class Boost {
public:
    Boost(double speed, const Vec3& axis);

    double speed() const { return speed_; }
    const Vec3& axis() const { return axis_; }
    double gamma() const { return gamma_; }
    Boost inverse() const { return Boost(-speed_, axis_); }

private:
    double speed_;
    Vec3 axis_;
    double gamma_;
};

/// Coordinates of an event in the boosted frame. With r|| the component of
/// r along the axis: r'|| = gamma (r|| - u t), r'perp = rperp,
/// t' = gamma (t - u r||).
Event boost_event(const Boost& b, const Event& ev);

struct BoostOptions {
    double window_begin = 0.0; // resampling window, in source-frame time
    double window_end = 0.0;
    int samples = 257; // Hermite knots placed uniformly in boosted time
};

struct BoostedTrajectory {
    Trajectory trajectory;         // piecewise-cubic in the boosted frame
    double interpolation_error;    // max |spline - exact| at segment midpoints
};

/// The same worldline described in the boosted frame. The boosted worldline
/// is generally not one of the analytic kinds, so it is returned as a cubic
/// Hermite resampling: knots uniform in boosted time t', positions and
/// velocities set from the exact transformation
///   v'|| = (v|| - u) / (1 - u v||),   v'perp = vperp / (gamma (1 - u v||)).
BoostedTrajectory boost_trajectory(const Trajectory& traj, const Boost& b, const BoostOptions& opt);

namespace detail {
// Non-throwing suprema over (-inf, stop]; used by the admissibility wrappers
// above and by the retarded-time solver's contraction certificate.
double speed_sup(const Trajectory& traj, double stop);
double accel_sup(const Trajectory& traj, double stop);
} // namespace detail

} // namespace retfields

#endif
