#include "retfields/retarded.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "retfields/errors.hpp"

namespace retfields {

RetardedSolution retarded_time(const Trajectory& traj, const Vec3& r1, double t,
                               const RetardedOptions& opt)
{
    if (!(opt.tolerance > 0.0))
        throw std::invalid_argument("retarded_time: tolerance must be positive");

    const double v1 = detail::speed_sup(traj, t);
    if (v1 >= 1.0)
        throw not_admissible_error("retarded_time: speed bound " + std::to_string(v1) +
                                   " >= 1, fixed point not certified");
    const double amplify = 1.0 / (1.0 - v1); // residual-to-error factor

    double s = opt.start.value_or(t);
    if (!(s <= t))
        throw std::invalid_argument("retarded_time: start iterate must satisfy s0 <= t");

    RetardedSolution sol;
    sol.speed_bound = v1;
    long n = 0;
    for (;;) {
        const Kinematics k = traj.eval(s, 1);
        const Vec3 d = r1 - k.position;
        const double dist = norm(d);
        const double residual = s - t + dist; // g(s); zero exactly at the fixed point
        const double err = std::fabs(residual) * amplify;
        if (err <= opt.tolerance) {
            sol.tau = s;
            sol.delay = t - s;
            sol.iterations = static_cast<int>(n);
            sol.certified_error = err;
            return sol;
        }
        if (n >= opt.max_iterations)
            throw iteration_limit_error("retarded_time: no convergence to " +
                                        std::to_string(opt.tolerance) + " within " +
                                        std::to_string(opt.max_iterations) + " iterations");
        double next = t - dist; // contraction step
        if (opt.newton && n >= 2 && dist > 0.0) {
            // g'(s) = 1 - <d_hat, w(s)> >= 1 - v1 > 0
            const double gp = 1.0 - dot(d, k.velocity) / dist;
            const double candidate = s - residual / gp;
            if (candidate <= t)
                next = candidate;
        }
        s = next;
        ++n;
    }
}

RetardedSolution retarded_time(const Trajectory& traj, const Vec3& r1, double t, double tolerance)
{
    RetardedOptions opt;
    opt.tolerance = tolerance;
    return retarded_time(traj, r1, t, opt);
}

double delay(const Trajectory& traj, const Vec3& r1, double t, double tolerance)
{
    return retarded_time(traj, r1, t, tolerance).delay;
}

bool in_G(const Trajectory& traj, const Vec3& r1, double t, double tolerance)
{
    return retarded_time(traj, r1, t, tolerance).delay > tolerance;
}

std::vector<double> picard_iterates(const Trajectory& traj, const Vec3& r1, double t, int count)
{
    if (count < 0)
        throw std::invalid_argument("picard_iterates: count must be >= 0");
    std::vector<double> its;
    its.reserve(static_cast<std::size_t>(count) + 1);
    double s = t;
    its.push_back(s);
    for (int k = 0; k < count; ++k) {
        s = t - norm(r1 - traj.position(s));
        its.push_back(s);
    }
    return its;
}

} // namespace retfields
