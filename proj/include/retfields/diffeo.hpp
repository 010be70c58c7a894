#ifndef RETFIELDS_DIFFEO_HPP
#define RETFIELDS_DIFFEO_HPP

#include "retfields/fields.hpp"
#include "retfields/trajectory.hpp"
#include "retfields/vec.hpp"

namespace retfields {

/// Coordinates on the manifold R x (0, inf) x S^2: retarded time, delay and
/// the unit direction from the retarded source position to the field point.
struct ManifoldPoint {
    double tau = 0.0;
    double T = 0.0;
    Vec3 e;
};

/// Sphere chart used when differentiating: the component of e of largest
/// magnitude is dropped and the remaining two, in cyclic order, serve as
/// local coordinates. |e_omitted| >= 1/sqrt(3) everywhere, so the chart is
/// always valid at its selection point.
struct Chart {
    int omitted = 2; // axis whose e-component is reconstructed from the others
    int sign = 1;    // hemisphere: sign of e_omitted

    int coord_i() const { return (omitted + 1) % 3; }
    int coord_j() const { return (omitted + 2) % 3; }
};

Chart chart_for(const Vec3& e);

/// phi: (r1, t) -> (tau, T, e). Defined on G; inherits the domain check of
/// fundamental().
ManifoldPoint phi_map(const Trajectory& traj, const FieldPoint& p, double tolerance = 1e-12);

/// psi = phi^{-1}: (tau, T, e) -> (r2(tau) + T e, tau + T). Exact, no solve.
FieldPoint psi_map(const Trajectory& traj, const ManifoldPoint& m);

struct JacobianCheck {
    double numeric = 0.0;     // central-difference determinant of d(tau,T,e_i,e_j)/d(t,x)
    double closed_form = 0.0; // z u^2 e_omitted
};

/// Compare the finite-difference Jacobian determinant of phi (in the given
/// chart) with the closed form z u^2 e_k. Requires |e_omitted| >= 1/sqrt(3)
/// at p and every stencil point to stay in G with delay >= 10 * tolerance.
JacobianCheck jacobian_check(const Trajectory& traj, const FieldPoint& p, const Chart& chart,
                             double h, double tolerance = 1e-12);

/// Evaluate a field-point function through psi, i.e. pull it back to the
/// manifold coordinates.
template <class F>
auto pullback(const Trajectory& traj, F&& field, const ManifoldPoint& m)
{
    return field(psi_map(traj, m));
}

} // namespace retfields

#endif
