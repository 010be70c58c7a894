#ifndef RETFIELDS_FIELDS_HPP
#define RETFIELDS_FIELDS_HPP

#include <array>

#include "retfields/trajectory.hpp"
#include "retfields/vec.hpp"

namespace retfields {

struct FieldPoint {
    Vec3 r;
    double t = 0.0;
};

/// The field combinations everything else is assembled from, evaluated at
/// one point (r1, t) of the domain G = {T > 0}:
///   tau  retarded time
///   T    delay t - tau, equal to the source distance |r12|
///   r12  r1 - r2(tau)
///   e    unit vector r12 / T
///   v    source velocity w(tau)
///   a    source acceleration dw/dt(tau)
///   u    1 / T
///   z    1 / (1 - <e, v>)
struct FundamentalFields {
    double tau = 0.0;
    double T = 0.0;
    Vec3 r12;
    Vec3 e;
    Vec3 v;
    Vec3 a;
    double u = 0.0;
    double z = 0.0;
    double solver_error = 0.0; // certified bound on |tau - exact| from the solver
};

/// Evaluate the fundamental fields. Throws outside_domain_error when the
/// solved delay is <= tolerance (point on the trajectory: u and z blow up).
FundamentalFields fundamental(const Trajectory& traj, const FieldPoint& p,
                              double tolerance = 1e-12);

/// First space and time derivatives of every fundamental field, from the
/// closed forms (all evaluated at retarded time; D = d/dt, D_i = d/dx_i):
///   D_i T = z e_i                 D T = 1 - z
///   D_i u = -z u^2 e_i            D u = (z - 1) u^2
///   D_i tau = -z e_i              D tau = z
///   D_i v = -e_i z a              D v = z a
///   D_i e = u (delta_i - z e_i (e - v))
///   D e   = u (z - 1) e - u z v
///   D_i z = z^2 e_i (u - u z - z <e,a> + u z <v,v>) + u z^2 v_i
///   D z   = u z - 2 u z^2 + z^3 <e,a> + u z^3 (1 - <v,v>)
/// plus the second time derivative of e obtained by differentiating D e
/// once more (the only second derivative the field formulas need).
struct FieldJet {
    FundamentalFields base;
    Vec3 grad_tau, grad_T, grad_u, grad_z; // gradients of the scalars
    std::array<Vec3, 3> grad_v, grad_e;    // grad_v[i] = d v / d x_i
    double dt_tau = 0.0, dt_T = 0.0, dt_u = 0.0, dt_z = 0.0;
    Vec3 dt_v, dt_e;
    Vec3 dtt_e;
};

FieldJet jet(const Trajectory& traj, const FieldPoint& p, double tolerance = 1e-12);

} // namespace retfields

#endif
