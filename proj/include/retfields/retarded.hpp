#ifndef RETFIELDS_RETARDED_HPP
#define RETFIELDS_RETARDED_HPP

#include <optional>
#include <vector>

#include "retfields/trajectory.hpp"
#include "retfields/vec.hpp"

namespace retfields {

/// Solution of tau = t - |r1 - r2(tau)|, the time at which a light signal
/// must leave the moving point to arrive at r1 at time t.
struct RetardedSolution {
    double tau = 0.0;
    double delay = 0.0;          // T = t - tau, also the source distance |r1 - r2(tau)|
    int iterations = 0;
    double certified_error = 0.0; // rigorous bound on |tau - exact|
    double speed_bound = 0.0;     // contraction constant v1 = sup_{s <= t} |w(s)|
};

struct RetardedOptions {
    double tolerance = 1e-12;
    bool newton = true;            // accelerate with Newton once the bracket is safe
    long max_iterations = 1000000; // iteration cap before giving up
    std::optional<double> start;   // initial iterate s0 <= t; defaults to t
};

/// Solve for the retarded time. The map f(s) = t - |r1 - r2(s)| contracts
/// with constant v1 < 1, so the fixed point exists, is unique, and every
/// iterate carries the certificate
///     |s - tau| <= |s - f(s)| / (1 - v1),
/// which is what `certified_error` reports (it is the classical
/// a-posteriori bound v1/(1-v1) |s_n - s_{n-1}| evaluated one step later).
/// Optional Newton steps on g(s) = s - t + |r1 - r2(s)| (with
/// g' = 1 - <e_hat, w> in [1 - v1, 1 + v1]) cut the iteration count for
/// fast sources; they are accepted only while they stay in (-inf, t].
RetardedSolution retarded_time(const Trajectory& traj, const Vec3& r1, double t,
                               const RetardedOptions& opt = {});
RetardedSolution retarded_time(const Trajectory& traj, const Vec3& r1, double t, double tolerance);

/// Delay T = t - tau.
double delay(const Trajectory& traj, const Vec3& r1, double t, double tolerance = 1e-12);

/// True when (r1, t) lies in the field domain G, i.e. the solved delay
/// exceeds `tolerance` (the point is off the trajectory).
bool in_G(const Trajectory& traj, const Vec3& r1, double t, double tolerance = 1e-12);

/// Plain fixed-point iterates s_0 = t, s_{k+1} = t - |r1 - r2(s_k)|,
/// returned including s_0 (count + 1 values). No Newton acceleration;
/// useful for verifying the a-priori geometric convergence bound.
std::vector<double> picard_iterates(const Trajectory& traj, const Vec3& r1, double t, int count);

} // namespace retfields

#endif
