// noise.hpp: Linear AC response of the biased SQUID and the ohmic
// spin-boson environment it presents to the qubits
//
// Sign convention: small oscillations go as exp(+i w t) and the bias circuit
// is a resistor Y = 1/R. With this convention the dissipative part
// Im(dJ/dPhi_s) is non-negative and vanishes at zero bias.

#pragma once

#include <complex>

#include "squidcouple/coupler.hpp"
#include "squidcouple/squid.hpp"

namespace squidcouple {

struct NoiseSpec {
    double R_kOhm{2.4};
    double temperature_K{0.05};
};

enum class ResponseModel {
    Full,     // flux constraint includes the loop inductance L
    LowBeta,  // L -> 0 in the flux constraint
};

/// dJ/dPhi_s in 1/H at angular frequency omega (rad/ns).
std::complex<double> linearized_response(const SquidParams& params, const WorkingPoint& wp,
                                         double R_kOhm, double omega_rad_per_ns,
                                         ResponseModel model = ResponseModel::Full);

/// alpha = (Mqs^2 Iq^2 / 4 h R) tan^2(dg) tan^2(gb) for the chosen qubit (1 or 2).
double ohmic_alpha(const QubitPair& qp, const SquidParams& params, const WorkingPoint& wp,
                   double R_kOhm, int qubit = 1);

/// Spectral density J(w)/2pi in GHz, with J(w) = (Iq^2 Mqs^2 / h) Im(dJ/dPhi_s).
/// Uses the low-beta response by default, where J(w) = alpha w at low frequency.
double spectral_density(const QubitPair& qp, const SquidParams& params, const WorkingPoint& wp,
                        double R_kOhm, double omega_rad_per_ns, int qubit = 1,
                        ResponseModel model = ResponseModel::LowBeta);

/// Order-of-magnitude dephasing time hbar / (2 pi alpha kB T), in ns.
/// Throws InfiniteLifetime when alpha == 0.
double dephasing_estimate(double alpha, double temperature_K);

}  // namespace squidcouple
