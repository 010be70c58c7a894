#include "retfields/electrodynamics.hpp"

#include <stdexcept>

namespace retfields {

Formulation formulation_from_string(const std::string& name)
{
    if (name == "feynman")
        return Formulation::feynman;
    if (name == "explicit")
        return Formulation::explicit_form;
    if (name == "potentials")
        return Formulation::potentials;
    throw std::invalid_argument("unknown field formulation '" + name +
                                "' (expected feynman, explicit or potentials)");
}

std::string to_string(Formulation f)
{
    switch (f) {
    case Formulation::feynman: return "feynman";
    case Formulation::explicit_form: return "explicit";
    default: return "potentials";
    }
}

Vec3 e_feynman(const FieldJet& J)
{
    const double u = J.base.u;
    return J.base.e * (u * u) + J.base.e * (2.0 * J.dt_u) + J.dt_e * u + J.dtt_e;
}

Vec3 e_explicit(const FundamentalFields& f)
{
    const double u = f.u, z = f.z;
    const double ea = dot(f.e, f.a), vv = dot(f.v, f.v);
    const double z2 = z * z, z3 = z2 * z, u2 = u * u;
    return f.a * (-u * z2) + f.e * (u * z3 * ea) - f.v * (u * z3 * ea) + f.e * (u2 * z3) -
           f.e * (u2 * z3 * vv) - f.v * (u2 * z3) + f.v * (u2 * z3 * vv);
}

Potentials potentials(const FundamentalFields& f)
{
    return {f.v * (f.u * f.z), f.u * f.z};
}

Vec3 e_from_potentials(const FieldJet& J)
{
    const double u = J.base.u, z = J.base.z;
    const Vec3 v = J.base.v;
    Vec3 grad_phi;
    for (int i = 0; i < 3; ++i)
        grad_phi[i] = J.grad_u[i] * z + u * J.grad_z[i];
    const Vec3 dA = J.dt_v * (u * z) + v * (J.dt_u * z + u * J.dt_z);
    return -grad_phi - dA;
}

Vec3 b_field(const FundamentalFields& f, const Vec3& E)
{
    return cross(f.e, E);
}

Vec3 b_from_potentials(const FieldJet& J)
{
    const double u = J.base.u, z = J.base.z;
    const Vec3 v = J.base.v, a = J.base.a, e = J.base.e;
    double M[3][3]; // M[j][k] = D_j A_k
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            M[j][k] = J.grad_u[j] * z * v[k] + u * J.grad_z[j] * v[k] - u * z * z * e[j] * a[k];
    return {M[1][2] - M[2][1], M[2][0] - M[0][2], M[0][1] - M[1][0]};
}

double lorenz_gauge_residual(const FieldJet& J)
{
    const double u = J.base.u, z = J.base.z;
    const Vec3 v = J.base.v;
    double div_A = 0.0;
    for (int i = 0; i < 3; ++i)
        div_A += J.grad_u[i] * z * v[i] + u * J.grad_z[i] * v[i] + u * z * J.grad_v[i][i];
    const double dt_phi = J.dt_u * z + u * J.dt_z;
    return div_A + dt_phi;
}

EMState em_state(const Trajectory& traj, const FieldPoint& p, double tolerance, Formulation method)
{
    EMState st;
    st.method = method;
    if (method == Formulation::explicit_form) {
        st.fundamentals = fundamental(traj, p, tolerance);
        st.E = e_explicit(st.fundamentals);
    } else {
        const FieldJet J = jet(traj, p, tolerance);
        st.fundamentals = J.base;
        st.E = method == Formulation::feynman ? e_feynman(J) : e_from_potentials(J);
    }
    st.B = b_field(st.fundamentals, st.E);
    const Potentials pot = potentials(st.fundamentals);
    st.A = pot.A;
    st.phi = pot.phi;
    return st;
}

} // namespace retfields
