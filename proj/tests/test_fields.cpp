#include <doctest.h>

#include <cmath>

#include "retfields/errors.hpp"
#include "retfields/fields.hpp"

using namespace retfields;

namespace {

// finite-difference oracle built directly on fundamental(), nothing shared
// with the closed-form jet
template <class Get>
double fd_scalar(const Trajectory& tr, const FieldPoint& p, int axis, double h, Get get)
{
    FieldPoint plus = p, minus = p;
    if (axis < 0) {
        plus.t += h;
        minus.t -= h;
    } else {
        plus.r[axis] += h;
        minus.r[axis] -= h;
    }
    return (get(fundamental(tr, plus)) - get(fundamental(tr, minus))) / (2.0 * h);
}

} // namespace

TEST_CASE("fundamental fields of a static source")
{
    const Trajectory tr = Trajectory::static_point({0, 0, 0});
    const FundamentalFields f = fundamental(tr, {{3, 4, 0}, 2.0});
    CHECK(f.T == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(f.tau == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(f.u == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(f.z == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(max_abs(f.e - Vec3{0.6, 0.8, 0.0}) < 1e-14);
    CHECK(norm(f.v) == 0.0);
    CHECK(norm(f.a) == 0.0);
    CHECK(norm(f.e) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("fundamental fields of uniform motion at half light speed")
{
    // the worked example used throughout: source along z at w = 0.5,
    // observed from (1,0,0) at t = 0
    const Trajectory tr = Trajectory::uniform({0, 0, 0}, {0, 0, 0.5});
    const FundamentalFields f = fundamental(tr, {{1, 0, 0}, 0.0});
    const double s3 = std::sqrt(3.0);
    CHECK(f.tau == doctest::Approx(-2.0 / s3).epsilon(1e-13));
    CHECK(f.T == doctest::Approx(2.0 / s3).epsilon(1e-13));
    CHECK(f.u == doctest::Approx(s3 / 2.0).epsilon(1e-13));
    CHECK(max_abs(f.e - Vec3{s3 / 2.0, 0.0, 0.5}) < 1e-13);
    CHECK(dot(f.e, f.v) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(f.z == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    CHECK(max_abs(f.r12 - Vec3{1.0, 0.0, 1.0 / s3}) < 1e-13);
    CHECK(f.solver_error <= 1e-12);
}

TEST_CASE("fundamental refuses points on the trajectory")
{
    const Trajectory tr = Trajectory::static_point({0, 0, 0});
    CHECK_THROWS_AS(fundamental(tr, {{0, 0, 0}, 1.0}), outside_domain_error);
}

TEST_CASE("jet at the pinned uniform-motion point")
{
    const Trajectory tr = Trajectory::uniform({0, 0, 0}, {0, 0, 0.5});
    const FieldJet J = jet(tr, {{1, 0, 0}, 0.0});
    const double s3 = std::sqrt(3.0);

    CHECK(J.dt_tau == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    CHECK(J.dt_T == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    // grad tau = -z e
    CHECK(max_abs(J.grad_tau - Vec3{-2.0 / s3, 0.0, -2.0 / 3.0}) < 1e-13);
    CHECK(max_abs(J.grad_T + J.grad_tau) == 0.0); // exact negation by construction
}

TEST_CASE("every first-derivative formula matches finite differences")
{
    const double h = 1e-5;
    const Trajectory trajectories[] = {
        Trajectory::uniform({0, 0, 0}, {0, 0, 0.5}),
        Trajectory::circular({0, 0, 0}, 1.0, 0.5),
        Trajectory::linear_oscillation({0.5, -0.2, 0}, {1, 1, 0}, 0.3, 1.1, 0.4),
    };
    const FieldPoint points[] = {
        {{1.4, 0.2, 0.3}, 0.0}, {{2.0, 1.0, -0.5}, 1.3}, {{-1.5, 2.0, 0.8}, 0.6}};

    for (const auto& tr : trajectories) {
        for (const auto& p : points) {
            const FieldJet J = jet(tr, p);
            for (int axis = -1; axis < 3; ++axis) {
                auto expect = [&](double closed, auto get) {
                    const double fd = fd_scalar(tr, p, axis, h, get);
                    CHECK(closed == doctest::Approx(fd).epsilon(5e-7).scale(1.0));
                };
                const int i = axis; // -1 encodes the time derivative
                expect(i < 0 ? J.dt_tau : J.grad_tau[i],
                       [](const FundamentalFields& f) { return f.tau; });
                expect(i < 0 ? J.dt_T : J.grad_T[i],
                       [](const FundamentalFields& f) { return f.T; });
                expect(i < 0 ? J.dt_u : J.grad_u[i],
                       [](const FundamentalFields& f) { return f.u; });
                expect(i < 0 ? J.dt_z : J.grad_z[i],
                       [](const FundamentalFields& f) { return f.z; });
                for (int c = 0; c < 3; ++c) {
                    expect(i < 0 ? J.dt_v[c] : J.grad_v[i][c],
                           [c](const FundamentalFields& f) { return f.v[c]; });
                    expect(i < 0 ? J.dt_e[c] : J.grad_e[i][c],
                           [c](const FundamentalFields& f) { return f.e[c]; });
                }
            }
        }
    }
}

TEST_CASE("second time derivative of e matches a second difference")
{
    const Trajectory tr = Trajectory::circular({0, 0, 0}, 1.0, 0.5);
    const FieldPoint p{{2.0, 1.0, -0.5}, 1.3};
    const FieldJet J = jet(tr, p);
    const double h = 1e-4;
    FieldPoint plus = p, minus = p;
    plus.t += h;
    minus.t -= h;
    const Vec3 second = (fundamental(tr, plus).e + fundamental(tr, minus).e -
                         fundamental(tr, p).e * 2.0) *
                        (1.0 / (h * h));
    CHECK(max_abs(J.dtt_e - second) < 1e-6);
}

TEST_CASE("algebraic side conditions of the jet")
{
    const Trajectory tr = Trajectory::linear_oscillation({0, 0, 1}, {0, 1, 0}, 0.5, 0.9, 0.2);
    for (const FieldPoint p : {FieldPoint{{1.2, -0.7, 0.4}, 0.3}, FieldPoint{{-2, 1, 3}, -1.0}}) {
        const FieldJet J = jet(tr, p);
        // e is a unit vector, so its derivatives are tangent to the sphere
        CHECK(std::fabs(dot(J.base.e, J.dt_e)) < 1e-12);
        for (int i = 0; i < 3; ++i)
            CHECK(std::fabs(dot(J.base.e, J.grad_e[i])) < 1e-12);
        // tau + T = t propagates to the derivative level
        CHECK(J.dt_tau == doctest::Approx(1.0 - J.dt_T).epsilon(1e-14));
        CHECK(J.base.tau + J.base.T == doctest::Approx(p.t).epsilon(1e-13));
    }
}
