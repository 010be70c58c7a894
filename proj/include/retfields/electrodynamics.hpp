#ifndef RETFIELDS_ELECTRODYNAMICS_HPP
#define RETFIELDS_ELECTRODYNAMICS_HPP

#include <string>

#include "retfields/fields.hpp"

namespace retfields {

// Gaussian-style normalization with c = 1 and the charge prefactor
// q / (4 pi eps0) set to 1; callers can rescale the linear outputs.

enum class Formulation { feynman, explicit_form, potentials };

Formulation formulation_from_string(const std::string& name); // "feynman" | "explicit" | "potentials"
std::string to_string(Formulation f);

/// Heaviside-Feynman assembly
///   E = u^2 e + u^{-1} D(u^2 e) + D^2 e
///     = u^2 e + 2 (Du) e + u (De) + D^2 e,
/// all time derivatives taken from the closed-form jet.
Vec3 e_feynman(const FieldJet& J);

/// The same field written out in the fundamental quantities alone:
///   E = -u z^2 a + u z^3 <e,a> (e - v)
///       + u^2 z^3 (1 - <v,v>) (e - v).
Vec3 e_explicit(const FundamentalFields& f);

struct Potentials {
    Vec3 A;          // u z v
    double phi = 0.0; // u z
};

Potentials potentials(const FundamentalFields& f);

/// E = -grad(phi) - dA/dt with both derivatives expanded analytically.
Vec3 e_from_potentials(const FieldJet& J);

/// B = e x E. Valid for any of the three E assemblies.
Vec3 b_field(const FundamentalFields& f, const Vec3& E);

/// B = curl A from the analytic Jacobian
/// D_j A_k = (D_j u) z v_k + u (D_j z) v_k - u z^2 e_j a_k.
Vec3 b_from_potentials(const FieldJet& J);

/// div A + D phi, assembled from the closed-form derivatives. Identically
/// zero in exact arithmetic (Lorenz gauge), so the return value measures
/// rounding only.
double lorenz_gauge_residual(const FieldJet& J);

struct EMState {
    FundamentalFields fundamentals;
    Vec3 E, B, A;
    double phi = 0.0;
    Formulation method = Formulation::explicit_form;
};

/// One-call evaluation of E, B and the potentials at a field point.
EMState em_state(const Trajectory& traj, const FieldPoint& p, double tolerance = 1e-12,
                 Formulation method = Formulation::explicit_form);

} // namespace retfields

#endif
