#include "retfields/diffeo.hpp"

#include <cmath>
#include <stdexcept>

#include "retfields/errors.hpp"

namespace retfields {

namespace {

double det3(const double m[3][3])
{
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double det4(const double m[4][4])
{
    double sub[3][3];
    double det = 0.0, sign = 1.0;
    for (int col = 0; col < 4; ++col) {
        for (int r = 1; r < 4; ++r) {
            int cc = 0;
            for (int c = 0; c < 4; ++c) {
                if (c == col)
                    continue;
                sub[r - 1][cc++] = m[r][c];
            }
        }
        det += sign * m[0][col] * det3(sub);
        sign = -sign;
    }
    return det;
}

} // namespace

Chart chart_for(const Vec3& e)
{
    Chart ch;
    ch.omitted = 0;
    for (int i = 1; i < 3; ++i)
        if (std::fabs(e[i]) > std::fabs(e[ch.omitted]))
            ch.omitted = i;
    ch.sign = e[ch.omitted] >= 0.0 ? 1 : -1;
    return ch;
}

ManifoldPoint phi_map(const Trajectory& traj, const FieldPoint& p, double tolerance)
{
    const FundamentalFields f = fundamental(traj, p, tolerance);
    return {f.tau, f.T, f.e};
}

FieldPoint psi_map(const Trajectory& traj, const ManifoldPoint& m)
{
    if (!(m.T > 0.0))
        throw std::invalid_argument("psi_map: delay T must be positive");
    return {traj.position(m.tau) + m.e * m.T, m.tau + m.T};
}

JacobianCheck jacobian_check(const Trajectory& traj, const FieldPoint& p, const Chart& chart,
                             double h, double tolerance)
{
    if (!(h > 0.0))
        throw std::invalid_argument("jacobian_check: step h must be positive");

    const FundamentalFields f0 = fundamental(traj, p, tolerance);
    if (std::fabs(f0.e[chart.omitted]) < 1.0 / std::sqrt(3.0) - 1e-12)
        throw std::domain_error("jacobian_check: chart is not valid at this point "
                                "(omitted component smaller than 1/sqrt(3))");

    const int ci = chart.coord_i(), cj = chart.coord_j();
    auto coords = [&](const FieldPoint& q) {
        const FundamentalFields f = fundamental(traj, q, tolerance);
        if (f.T < 10.0 * tolerance)
            throw outside_domain_error("jacobian_check: stencil point too close to the "
                                       "trajectory for a trustworthy difference");
        return std::array<double, 4>{f.tau, f.T, f.e[ci], f.e[cj]};
    };

    // rows: d/dt, d/dx1, d/dx2, d/dx3 by central differences
    double Jnum[4][4];
    for (int d = 0; d < 4; ++d) {
        FieldPoint plus = p, minus = p;
        if (d == 0) {
            plus.t += h;
            minus.t -= h;
        } else {
            plus.r[d - 1] += h;
            minus.r[d - 1] -= h;
        }
        const auto cp = coords(plus), cm = coords(minus);
        for (int k = 0; k < 4; ++k)
            Jnum[d][k] = (cp[k] - cm[k]) / (2.0 * h);
    }

    JacobianCheck out;
    out.numeric = det4(Jnum);
    out.closed_form = f0.z * f0.u * f0.u * f0.e[chart.omitted];
    return out;
}

} // namespace retfields
