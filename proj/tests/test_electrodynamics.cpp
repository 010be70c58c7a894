#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "retfields/electrodynamics.hpp"

using namespace retfields;

namespace {

// Independent oracle for uniform motion: the boosted Coulomb field written
// with the *present* position vector R = r1 - r2(t),
//   E = (1 - v^2) R / (|R|^2 - |v x R|^2)^{3/2},   B = v x E.
Vec3 boosted_coulomb(const Vec3& R, const Vec3& v)
{
    const double denom = std::pow(norm2(R) - norm2(cross(v, R)), 1.5);
    return R * ((1.0 - norm2(v)) / denom);
}

} // namespace

TEST_CASE("static source gives the Coulomb field through every assembly")
{
    const Trajectory tr = Trajectory::static_point({0, 0, 0});
    for (const FieldPoint p : {FieldPoint{{2, 0, 0}, 0.0}, FieldPoint{{1, -2, 2}, 5.0}}) {
        const FieldJet J = jet(tr, p);
        const Vec3 coulomb = J.base.e * (J.base.u * J.base.u);
        CHECK(max_abs(e_explicit(J.base) - coulomb) < 1e-14);
        CHECK(max_abs(e_feynman(J) - coulomb) < 1e-14);
        CHECK(max_abs(e_from_potentials(J) - coulomb) < 1e-14);
        CHECK(norm(b_field(J.base, coulomb)) < 1e-15);
        CHECK(norm(b_from_potentials(J)) < 1e-15);
        const Potentials pot = potentials(J.base);
        CHECK(pot.phi == doctest::Approx(J.base.u).epsilon(1e-15));
        CHECK(norm(pot.A) == 0.0);
    }
}

TEST_CASE("pinned values for uniform motion at half light speed")
{
    const Trajectory tr = Trajectory::uniform({0, 0, 0}, {0, 0, 0.5});
    const FieldPoint p{{1, 0, 0}, 0.0};
    const EMState st = em_state(tr, p);
    const double s3 = std::sqrt(3.0);

    CHECK(st.E[0] == doctest::Approx(2.0 / s3).epsilon(1e-13)); // 1.1547005383792515
    CHECK(std::fabs(st.E[1]) < 1e-14);
    CHECK(std::fabs(st.E[2]) < 1e-13);
    CHECK(st.B[1] == doctest::Approx(1.0 / s3).epsilon(1e-13)); // 0.5773502691896258
    CHECK(std::fabs(st.B[0]) < 1e-14);
    CHECK(std::fabs(st.B[2]) < 1e-14);
    CHECK(st.phi == doctest::Approx(2.0 / s3).epsilon(1e-13));
    CHECK(max_abs(st.A - Vec3{0.0, 0.0, 1.0 / s3}) < 1e-13);
}

TEST_CASE("uniform motion matches the boosted Coulomb oracle")
{
    const Vec3 w{0.2, -0.4, 0.1};
    const Vec3 p0{0.3, 0.0, -0.2};
    const Trajectory tr = Trajectory::uniform(p0, w);
    for (const FieldPoint p :
         {FieldPoint{{1, 0, 0}, 0.0}, FieldPoint{{-2, 1.5, 0.7}, 1.2}, FieldPoint{{0.4, 3, -2}, -0.8}}) {
        const FundamentalFields f = fundamental(tr, p);
        const Vec3 R = p.r - (p0 + w * p.t); // present position vector
        const Vec3 expected = boosted_coulomb(R, w);
        const Vec3 E = e_explicit(f);
        CHECK(max_abs(E - expected) < 1e-12 * std::max(1.0, max_abs(expected)));
        // for uniform motion e x E and v x E coincide
        CHECK(max_abs(b_field(f, E) - cross(w, E)) < 1e-13);
    }
}

TEST_CASE("the three E assemblies agree for accelerated sources")
{
    const Trajectory trs[] = {
        Trajectory::circular({0, 0, 0}, 1.0, 0.5),
        Trajectory::linear_oscillation({0, 0.3, -0.1}, {1, 2, 2}, 0.25, 1.4, 0.9),
        Trajectory::piecewise_cubic({-1.0, 0.5, 2.0}, {{0, 0, 0}, {0.3, 0.2, 0}, {0.1, 0.5, -0.2}},
                                    {{0.2, 0, 0}, {0, 0.3, -0.1}, {-0.2, 0, 0}}),
    };
    const FieldPoint pts[] = {{{2, 1, -0.5}, 1.3}, {{-1.5, 2, 0.8}, 0.6}, {{0.3, -2.4, 1.1}, -0.9}};
    for (const auto& tr : trs) {
        for (const auto& p : pts) {
            const FieldJet J = jet(tr, p);
            const Vec3 Ee = e_explicit(J.base);
            const Vec3 Ef = e_feynman(J);
            const Vec3 Ep = e_from_potentials(J);
            const double scale = std::max(1.0, norm(Ee));
            CHECK(norm(Ef - Ee) / scale < 1e-12);
            CHECK(norm(Ep - Ee) / scale < 1e-12);

            const Vec3 B = b_field(J.base, Ee);
            CHECK(norm(b_from_potentials(J) - B) / scale < 1e-12);
            // B is perpendicular to both e and E
            CHECK(std::fabs(dot(B, J.base.e)) / scale < 1e-13);
            CHECK(std::fabs(dot(B, Ee)) / (scale * scale) < 1e-13);
            // the analytic Lorenz-gauge combination is pure rounding
            CHECK(std::fabs(lorenz_gauge_residual(J)) < 1e-12);
        }
    }
}

TEST_CASE("em_state honors the formulation choice")
{
    const Trajectory tr = Trajectory::circular({0, 0, 0}, 1.0, 0.5);
    const FieldPoint p{{2, 1, -0.5}, 1.3};
    const EMState a = em_state(tr, p, 1e-12, Formulation::feynman);
    const EMState b = em_state(tr, p, 1e-12, Formulation::explicit_form);
    const EMState c = em_state(tr, p, 1e-12, Formulation::potentials);
    CHECK(a.method == Formulation::feynman);
    CHECK(max_abs(a.E - b.E) < 1e-12);
    CHECK(max_abs(c.E - b.E) < 1e-12);
    CHECK(max_abs(a.B - b.B) < 1e-12);

    CHECK(formulation_from_string("feynman") == Formulation::feynman);
    CHECK(formulation_from_string("explicit") == Formulation::explicit_form);
    CHECK(formulation_from_string("potentials") == Formulation::potentials);
    CHECK(to_string(Formulation::feynman) == "feynman");
    CHECK_THROWS_AS(formulation_from_string("other"), std::invalid_argument);
}
