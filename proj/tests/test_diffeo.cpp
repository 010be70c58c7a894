#include <doctest.h>

#include <cmath>

#include "retfields/diffeo.hpp"
#include "retfields/errors.hpp"

using namespace retfields;

TEST_CASE("chart selection drops the dominant component")
{
    CHECK(chart_for({0.1, 0.2, 0.97}).omitted == 2);
    CHECK(chart_for({0.1, 0.2, 0.97}).sign == 1);
    CHECK(chart_for({-0.9, 0.3, 0.3}).omitted == 0);
    CHECK(chart_for({-0.9, 0.3, 0.3}).sign == -1);
    CHECK(chart_for({0.0, -1.0, 0.0}).omitted == 1);
    // cyclic coordinate pairs
    const Chart cx{0, 1};
    CHECK(cx.coord_i() == 1);
    CHECK(cx.coord_j() == 2);
    const Chart cy{1, 1};
    CHECK(cy.coord_i() == 2);
    CHECK(cy.coord_j() == 0);
}

TEST_CASE("phi and psi are inverse to each other")
{
    const Trajectory tr = Trajectory::circular({0, 0, 0}, 1.0, 0.5);

    SUBCASE("psi after phi")
    {
        for (const FieldPoint p : {FieldPoint{{2, 1, -0.5}, 1.3}, FieldPoint{{-1, 0.4, 2}, -0.6}}) {
            const ManifoldPoint m = phi_map(tr, p);
            const FieldPoint back = psi_map(tr, m);
            CHECK(max_abs(back.r - p.r) < 1e-11);
            CHECK(std::fabs(back.t - p.t) < 1e-11);
        }
    }

    SUBCASE("phi after psi")
    {
        const ManifoldPoint m{0.3, 2.5, normalized({0.2, -0.4, 0.6})};
        const ManifoldPoint m2 = phi_map(tr, psi_map(tr, m));
        CHECK(std::fabs(m2.tau - m.tau) < 1e-11);
        CHECK(std::fabs(m2.T - m.T) < 1e-11);
        CHECK(max_abs(m2.e - m.e) < 1e-11);
    }

    SUBCASE("psi rejects nonpositive delay")
    {
        CHECK_THROWS_AS(psi_map(tr, ManifoldPoint{0.0, 0.0, {0, 0, 1}}), std::invalid_argument);
    }
}

TEST_CASE("jacobian determinant of the chart map has the closed form z u^2 e_k")
{
    const Trajectory tr = Trajectory::static_point({0, 0, 0});

    SUBCASE("pinned static values")
    {
        // at distance 2 along z: z = 1, u = 1/2, e3 = 1 -> det = 0.25
        const JacobianCheck far = jacobian_check(tr, {{0, 0, 2}, 1.0}, Chart{2, 1}, 1e-3);
        CHECK(far.closed_form == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(far.numeric == doctest::Approx(0.25).epsilon(1e-6));
        // at distance 1: det = 1
        const JacobianCheck near = jacobian_check(tr, {{0, 0, 1}, 0.0}, Chart{2, 1}, 1e-4);
        CHECK(near.closed_form == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(near.numeric == doctest::Approx(1.0).epsilon(1e-6));
    }

    SUBCASE("lower hemisphere flips the sign")
    {
        const JacobianCheck jc = jacobian_check(tr, {{0, 0, -2}, 0.0}, Chart{2, -1}, 1e-3);
        CHECK(jc.closed_form == doctest::Approx(-0.25).epsilon(1e-13));
        CHECK(jc.numeric == doctest::Approx(-0.25).epsilon(1e-6));
    }

    SUBCASE("accelerated source, moving observer chart")
    {
        const Trajectory circ = Trajectory::circular({0, 0, 0}, 1.0, 0.5);
        const FieldPoint p{{2, 1, -0.5}, 1.3};
        const FundamentalFields f = fundamental(circ, p);
        const JacobianCheck jc = jacobian_check(circ, p, chart_for(f.e), 1e-4);
        CHECK(jc.closed_form == doctest::Approx(f.z * f.u * f.u * f.e[chart_for(f.e).omitted])
                                    .epsilon(1e-12));
        CHECK(std::fabs(jc.numeric / jc.closed_form - 1.0) < 1e-3);
    }

    SUBCASE("invalid chart is rejected")
    {
        // e = (1,0,0) but the chart insists on omitting e_z
        CHECK_THROWS_AS(jacobian_check(tr, {{2, 0, 0}, 0.0}, Chart{2, 1}, 1e-3),
                        std::domain_error);
        CHECK_THROWS_AS(jacobian_check(tr, {{0, 0, 2}, 0.0}, Chart{2, 1}, 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("pullback evaluates a field-point function through psi")
{
    const Trajectory tr = Trajectory::uniform({0, 0, 0}, {0.3, 0, 0});
    const ManifoldPoint m{0.5, 1.5, normalized({1, 1, 0})};
    const double t_value = pullback(tr, [](const FieldPoint& p) { return p.t; }, m);
    CHECK(t_value == doctest::Approx(m.tau + m.T).epsilon(1e-15));
    const Vec3 r_value = pullback(tr, [](const FieldPoint& p) { return p.r; }, m);
    CHECK(max_abs(r_value - (tr.position(0.5) + m.e * 1.5)) < 1e-14);
}
