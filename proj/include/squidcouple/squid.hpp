// squid.hpp: Static zero-voltage state of a current-biased dc SQUID
//
// Phase variables: gamma_bar = (g1 + g2)/2, delta_gamma = (g1 - g2)/2.
// Static equations with all time derivatives and the bias-circuit current
// set to zero:
//
//   Ib = 2 I0 cos(delta_gamma) sin(gamma_bar)
//   J  = I0 cos(gamma_bar) sin(delta_gamma)
//   delta_gamma = pi (Phi_s - L J / Phi0)
//
// The flux constraint uses the symmetric convention: delta_gamma = 0 when
// Phi_s = 0 and J = 0.

#pragma once

#include "squidcouple/units.hpp"

namespace squidcouple {

struct SquidParams {
    double L_pH{200.0};
    double C_fF{5.0};
    double I0_uA{0.48};

    /// Screening parameter 2 L I0 / Phi0.
    double beta_L() const;
    /// Throws InvalidArgument unless L, C and I0 are all positive.
    void validate() const;

    /// Returns a copy with I0 chosen so that beta_L() == beta (L held fixed).
    SquidParams with_beta(double beta) const;
};

struct WorkingPoint {
    double gamma_bar{0.0};    // rad
    double delta_gamma{0.0};  // rad
    double J_uA{0.0};
    double Ib_uA{0.0};
    double Phi_s{0.0};        // Phi0 units, as requested by the caller

    // |Ib - 2 I0 cos(dg) sin(gb)| and the flux-constraint mismatch expressed
    // as a current, both in µA.
    double residual_bias_uA{0.0};
    double residual_flux_uA{0.0};
};

/// Static working point on the branch connected to (0, 0) at zero bias and
/// zero flux. Newton on (gamma_bar, delta_gamma) with continuation in Ib.
WorkingPoint solve_working_point(const SquidParams& params, double Ib_uA, double Phi_s);

/// Critical current Ic(Phi_s) in µA: the largest bias with a static solution.
double critical_current(const SquidParams& params, double Phi_s);

/// Josephson inductance of one junction at the working point, in H.
double josephson_inductance(const SquidParams& params, const WorkingPoint& wp);

/// Re(dJ/dPhi_s) at fixed Ib in the low-frequency limit, in 1/H. Negative
/// when tan^2(dg) tan^2(gb) > 1.
double re_transfer_function(const SquidParams& params, const WorkingPoint& wp);

/// Small-beta_L form (1/2Lj)(1 - tan^2(dg) tan^2(gb)), in 1/H.
double re_transfer_smallbeta(const SquidParams& params, const WorkingPoint& wp);

/// Reduces a flux to the period (-1/2, 1/2]; half a flux quantum stays
/// on the positive branch.
double reduce_flux(double Phi_s);

}  // namespace squidcouple
