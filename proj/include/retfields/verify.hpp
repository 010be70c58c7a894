#ifndef RETFIELDS_VERIFY_HPP
#define RETFIELDS_VERIFY_HPP

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "retfields/fields.hpp"
#include "retfields/trajectory.hpp"

namespace retfields {

// Everything here checks the closed-form machinery against quantities it
// does not use: central finite differences of independently re-solved field
// values. Differences are O(h^2), so halving h should shrink a genuine
// residual by about 4; that ratio is the standard sanity check that a
// residual really is truncation error and not a wrong formula.

enum class Direction { t, x1, x2, x3 };

/// Central difference (f(p + h d) - f(p - h d)) / 2h for any callable of a
/// FieldPoint returning double or Vec3.
template <class F>
auto fd_partial(F&& f, const FieldPoint& p, Direction d, double h)
{
    FieldPoint plus = p, minus = p;
    if (d == Direction::t) {
        plus.t += h;
        minus.t -= h;
    } else {
        const int axis = static_cast<int>(d) - 1;
        plus.r[axis] += h;
        minus.r[axis] -= h;
    }
    return (f(plus) - f(minus)) * (1.0 / (2.0 * h));
}

/// Throws outside_domain_error unless p and all +/-h shifts of p (in time
/// and every space direction) have delay >= 10 * tolerance, so differences
/// never straddle the field singularity.
void require_stencil_in_domain(const Trajectory& traj, const FieldPoint& p, double h,
                               double tolerance);

// ---------------------------------------------------------------------------
// Maxwell and wave-equation residuals.

struct ResidualReport {
    FieldPoint point;
    double h = 0.0;
    // |curl E + DB|, |div E|, |curl B - DE|, |div B|
    double faraday = 0.0, gauss_e = 0.0, ampere = 0.0, gauss_b = 0.0;
    // max-component |laplacian - second time derivative| for each field
    double wave_E = 0.0, wave_B = 0.0, wave_A = 0.0, wave_phi = 0.0;
    double normalizer = 0.0; // |E| + |B| + |A| + phi at the point
};

inline constexpr std::array<const char*, 8> residual_names{
    "faraday", "gauss_e", "ampere", "gauss_b", "wave_E", "wave_B", "wave_A", "wave_phi"};

std::array<double, 8> residual_values(const ResidualReport& r);

/// Evaluate all eight residuals from one 9-point stencil (center plus +/-h
/// along t, x1, x2, x3). The trajectory is charge-free away from the source
/// point, so away from the worldline every residual converges to zero.
ResidualReport maxwell_residuals(const Trajectory& traj, const FieldPoint& p, double h,
                                 double tolerance = 1e-12);

/// Finite-difference deviation of each closed-form first-derivative formula,
/// keyed "grad_tau", "dt_tau", ..., "grad_e", "dt_e" (12 entries). The value
/// is the worst absolute component deviation at this point.
std::map<std::string, double> derivative_table_check(const Trajectory& traj, const FieldPoint& p,
                                                     double h, double tolerance = 1e-12);

// ---------------------------------------------------------------------------
// Whole-trajectory verification suite.

/// Low-discrepancy (Halton) sampling of field points around the trajectory.
/// Points are accepted only when the solved delay lies in
/// [delay_min, delay_max] and, for splines, the retarded time keeps
/// `knot_margin` clear of every knot (the interpolant is only C^1 there, so
/// difference quotients that straddle a knot would not converge at order 2).
struct DomainSampler {
    Vec3 r_min{-3.0, -3.0, -3.0};
    Vec3 r_max{3.0, 3.0, 3.0};
    double t_min = -2.0;
    double t_max = 2.0;
    double delay_min = 0.05;
    double delay_max = 50.0;
    double knot_margin = 0.02;
    unsigned skip = 0; // Halton start offset; acts as the sampling seed
};

std::vector<FieldPoint> sample_domain_points(const Trajectory& traj, const DomainSampler& sampler,
                                             int count, double tolerance = 1e-12);

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;     // worst observed value of the checked quantity
    double tolerance = 0.0; // bound it was held against
    std::string detail;
};

struct SuiteOptions {
    DomainSampler sampler;
    int points = 200;         // sample size for the algebraic checks
    int maxwell_points = 12;  // subset re-used for the FD residual checks
    double tolerance = 1e-12; // retarded-time solver tolerance
    double table_h = 1e-4;    // step for the derivative-table comparison
    double maxwell_h = 1e-2;  // coarsest step of the residual convergence pair
    int threads = 1;
};

struct SuiteReport {
    bool pass = false;
    AdmissibilityReport admissibility;
    int points = 0;
    unsigned seed = 0;
    double runtime_seconds = 0.0;
    std::vector<CheckResult> checks;

    nlohmann::json to_json() const;
    void write_text(std::ostream& os) const;
};

/// Run every verification family against one trajectory: admissibility,
/// fundamental-field invariants, retarded-time certificates, the
/// twelve-formula derivative table, agreement of the three E assemblies,
/// B identities, the Lorenz gauge residual, Maxwell/wave convergence, and
/// the (tau, T, e) chart round trips and Jacobians.
SuiteReport suite(const Trajectory& traj, const SuiteOptions& opt);

} // namespace retfields

#endif
