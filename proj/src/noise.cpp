// noise.cpp

#include "squidcouple/noise.hpp"

#include <cmath>

#include "squidcouple/errors.hpp"

namespace squidcouple {

using units::pi;

std::complex<double> linearized_response(const SquidParams& params, const WorkingPoint& wp,
                                         double R_kOhm, double omega_rad_per_ns,
                                         ResponseModel model)
{
    if (!(omega_rad_per_ns >= 0.0)) throw InvalidArgument("linearized_response: omega must be >= 0");
    if (!(R_kOhm > 0.0)) throw InvalidArgument("linearized_response: R must be positive");

    const double Lj = josephson_inductance(params, wp);
    const double I0 = params.I0_uA * units::microamp;
    const double C = params.C_fF * units::femtofarad;
    const double L = params.L_pH * units::picohenry;
    const double R = R_kOhm * units::kiloohm;
    const double w = omega_rad_per_ns / units::nanosecond;
    const double phase_scale = units::flux_quantum / (2.0 * pi);

    const double tg = std::tan(wp.gamma_bar), td = std::tan(wp.delta_gamma);
    using cd = std::complex<double>;
    // d(gamma_bar) = G d(delta_gamma)
    const cd G = (2.0 * tg * td / Lj) / cd(2.0 / Lj - 2.0 * w * w * C, w / R);

    const double cc = std::cos(wp.gamma_bar) * std::cos(wp.delta_gamma);
    const double ss = std::sin(wp.gamma_bar) * std::sin(wp.delta_gamma);
    // dJ = Y d(delta_gamma), including the junction displacement current.
    const cd Y = I0 * cc - C * w * w * phase_scale - I0 * ss * G;
    const cd a = Y * (pi / units::flux_quantum);
    if (model == ResponseModel::LowBeta) return a;
    return a / (1.0 + L * a);
}

double ohmic_alpha(const QubitPair& qp, const SquidParams& params, const WorkingPoint& wp,
                   double R_kOhm, int qubit)
{
    (void)params;
    if (!(R_kOhm > 0.0)) throw InvalidArgument("ohmic_alpha: R must be positive");
    const double Iq = (qubit == 2 ? qp.Iq2_uA : qp.Iq1_uA) * units::microamp;
    const double M = qp.Mqs_pH * units::picohenry;
    const double R = R_kOhm * units::kiloohm;
    const double tt = std::tan(wp.delta_gamma) * std::tan(wp.gamma_bar);
    return M * M * Iq * Iq / (4.0 * units::planck * R) * tt * tt;
}

double spectral_density(const QubitPair& qp, const SquidParams& params, const WorkingPoint& wp,
                        double R_kOhm, double omega_rad_per_ns, int qubit, ResponseModel model)
{
    const double Iq = (qubit == 2 ? qp.Iq2_uA : qp.Iq1_uA) * units::microamp;
    const double M = qp.Mqs_pH * units::picohenry;
    const double im = linearized_response(params, wp, R_kOhm, omega_rad_per_ns, model).imag();
    const double density_per_s = Iq * Iq * M * M / units::planck * im;
    return density_per_s / (2.0 * pi) / units::gigahertz;
}

double dephasing_estimate(double alpha, double temperature_K)
{
    if (!(temperature_K > 0.0)) throw InvalidArgument("dephasing_estimate: temperature must be positive");
    if (alpha < 0.0) throw InvalidArgument("dephasing_estimate: alpha must be non-negative");
    if (alpha == 0.0) throw InfiniteLifetime("alpha = 0: no dephasing from the bias circuit");
    const double rate = 2.0 * pi * alpha * units::boltzmann * temperature_K / units::hbar;
    return 1.0 / rate / units::nanosecond;
}

}  // namespace squidcouple
