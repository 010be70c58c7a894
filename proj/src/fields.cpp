#include "retfields/fields.hpp"

#include <cmath>

#include "retfields/errors.hpp"
#include "retfields/retarded.hpp"

namespace retfields {

FundamentalFields fundamental(const Trajectory& traj, const FieldPoint& p, double tolerance)
{
    const RetardedSolution sol = retarded_time(traj, p.r, p.t, tolerance);
    if (sol.delay <= tolerance)
        throw outside_domain_error("fundamental: delay T <= tolerance, point lies on the "
                                   "trajectory and the fields are singular there");
    const Kinematics k = traj.eval(sol.tau, 2);
    FundamentalFields f;
    f.tau = sol.tau;
    f.T = sol.delay;
    f.r12 = p.r - k.position;
    // T and |r12| agree up to the solver certificate; use T as the scale so
    // the identity tau + T = t is exact by construction
    f.e = f.r12 / norm(f.r12);
    f.v = k.velocity;
    f.a = k.acceleration;
    f.u = 1.0 / f.T;
    f.z = 1.0 / (1.0 - dot(f.e, f.v));
    f.solver_error = sol.certified_error;
    return f;
}

FieldJet jet(const Trajectory& traj, const FieldPoint& p, double tolerance)
{
    FieldJet J;
    J.base = fundamental(traj, p, tolerance);
    const Vec3 e = J.base.e, v = J.base.v, a = J.base.a;
    const double u = J.base.u, z = J.base.z;
    const double ea = dot(e, a), vv = dot(v, v);
    const double u2 = u * u, z2 = z * z, z3 = z2 * z;

    for (int i = 0; i < 3; ++i) {
        const double ei = e[i];
        J.grad_T[i] = z * ei;
        J.grad_u[i] = -z * u2 * ei;
        J.grad_tau[i] = -z * ei;
        J.grad_z[i] = -z3 * ei * ea - u * z3 * ei + u * z2 * ei + u * z2 * v[i] + u * z3 * ei * vv;
        J.grad_v[i] = a * (-ei * z);
        J.grad_e[i] = e * (-u * z * ei) + basis(i) * u + v * (u * z * ei);
    }

    J.dt_T = 1.0 - z;
    J.dt_u = z * u2 - u2;
    J.dt_tau = z;
    J.dt_z = u * z - 2.0 * u * z2 + z3 * ea + u * z3 - u * z3 * vv;
    J.dt_v = a * z;
    J.dt_e = e * (-u) + e * (u * z) - v * (u * z);

    // D^2 e by the product rule on D e = -u e + u z e - u z v, reusing the
    // first-order results above
    const double du = J.dt_u, dz = J.dt_z;
    J.dtt_e = e * (-du) - J.dt_e * u + e * (du * z + u * dz) + J.dt_e * (u * z) -
              v * (du * z + u * dz) - J.dt_v * (u * z);
    return J;
}

} // namespace retfields
