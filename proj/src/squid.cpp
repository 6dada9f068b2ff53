// squid.cpp: Static SQUID solver

#include "squidcouple/squid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "squidcouple/errors.hpp"

namespace squidcouple {

namespace {

using units::pi;

constexpr double kPhaseTol = 1e-12;
constexpr int kMaxNewton = 50;
constexpr int kGridPoints = 2000;
constexpr double kMaxStepFraction = 0.02;

// Solves d = pi (phi - (beta/2) cos(gb) sin d) for the branch continuous
// with d = pi*phi. Safeguarded Newton inside the bracket
// [pi (phi - beta/2), pi (phi + beta/2)].
double self_consistent_delta(double gamma_bar, double phi, double beta, double guess)
{
    const double a = 0.5 * pi * beta * std::cos(gamma_bar);
    auto f = [&](double d) { return d - pi * phi + a * std::sin(d); };
    double lo = pi * phi - std::abs(a) - 1e-12;
    double hi = pi * phi + std::abs(a) + 1e-12;
    double d = std::clamp(guess, lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double fd = f(d);
        if (fd == 0.0) return d;
        if (fd > 0.0) hi = std::min(hi, d); else lo = std::max(lo, d);
        const double df = 1.0 + a * std::cos(d);
        double next = (df > 0.0) ? d - fd / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - d) <= 1e-15 * std::max(1.0, std::abs(d))) return next;
        d = next;
    }
    return d;
}

struct Phases {
    double gb;
    double dg;
};

// Newton on the reduced 2x2 system, dimensionless bias ib = Ib / I0.
// Returns false if it fails to converge or lands on the unstable branch.
bool newton(Phases& x, double ib, double phi, double beta)
{
    const double a = 0.5 * pi * beta;
    for (int it = 0; it < kMaxNewton; ++it) {
        const double cg = std::cos(x.gb), sg = std::sin(x.gb);
        const double cd = std::cos(x.dg), sd = std::sin(x.dg);
        const double f1 = 2.0 * cd * sg - ib;
        const double f2 = x.dg - pi * phi + a * cg * sd;
        const double j11 = 2.0 * cd * cg, j12 = -2.0 * sd * sg;
        const double j21 = -a * sg * sd, j22 = 1.0 + a * cg * cd;
        const double det = j11 * j22 - j12 * j21;
        if (!(det > 0.0)) return false;
        const double step_gb = (j22 * f1 - j12 * f2) / det;
        const double step_dg = (j11 * f2 - j21 * f1) / det;
        x.gb -= step_gb;
        x.dg -= step_dg;
        if (!std::isfinite(x.gb) || !std::isfinite(x.dg)) return false;
        if (std::abs(step_gb) <= kPhaseTol * std::max(1.0, std::abs(x.gb)) &&
            std::abs(step_dg) <= kPhaseTol * std::max(1.0, std::abs(x.dg))) {
            // Stable branch: the Jacobian stays positive up to Ic.
            const double cg2 = std::cos(x.gb), sg2 = std::sin(x.gb);
            const double cd2 = std::cos(x.dg), sd2 = std::sin(x.dg);
            return 2.0 * cd2 * cg2 * (1.0 + a * cg2 * cd2) - 2.0 * a * sd2 * sd2 * sg2 * sg2 > 0.0;
        }
    }
    return false;
}

double bias_at(double gamma_bar, double phi, double beta, double& delta_guess)
{
    delta_guess = self_consistent_delta(gamma_bar, phi, beta, delta_guess);
    return 2.0 * std::cos(delta_guess) * std::sin(gamma_bar);
}

// Ic / I0 for a reduced, non-negative flux.
double critical_ratio(double phi, double beta)
{
    double guess = pi * phi;
    double best = -1.0;
    int best_index = 0;
    for (int i = 0; i <= kGridPoints; ++i) {
        const double gb = 0.5 * pi * i / kGridPoints;
        const double ib = bias_at(gb, phi, beta, guess);
        if (ib > best) {
            best = ib;
            best_index = i;
        }
    }
    // Golden-section refinement on the bracketing grid cells.
    double lo = 0.5 * pi * std::max(0, best_index - 1) / kGridPoints;
    double hi = 0.5 * pi * std::min(kGridPoints, best_index + 1) / kGridPoints;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double g_guess = pi * phi;
    auto value = [&](double gb) { return bias_at(gb, phi, beta, g_guess); };
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = value(x1), f2 = value(x2);
    while (hi - lo > 1e-13) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo); f2 = value(x2);
        } else {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo); f1 = value(x1);
        }
    }
    return std::max({best, f1, f2});
}

}  // namespace

double SquidParams::beta_L() const
{
    return 2.0 * L_pH * units::picohenry * I0_uA * units::microamp / units::flux_quantum;
}

void SquidParams::validate() const
{
    if (!(L_pH > 0.0) || !(C_fF > 0.0) || !(I0_uA > 0.0))
        throw InvalidArgument("SquidParams: L, C and I0 must be positive");
}

SquidParams SquidParams::with_beta(double beta) const
{
    SquidParams out = *this;
    out.I0_uA = beta * units::flux_quantum / (2.0 * L_pH * units::picohenry) / units::microamp;
    return out;
}

double reduce_flux(double Phi_s)
{
    return Phi_s - std::ceil(Phi_s - 0.5);
}

double critical_current(const SquidParams& params, double Phi_s)
{
    params.validate();
    const double phi = std::abs(reduce_flux(Phi_s));
    return params.I0_uA * critical_ratio(phi, params.beta_L());
}

WorkingPoint solve_working_point(const SquidParams& params, double Ib_uA, double Phi_s)
{
    params.validate();
    if (!(Ib_uA >= 0.0) || !std::isfinite(Phi_s))
        throw InvalidArgument("solve_working_point: Ib must be non-negative and Phi_s finite");

    const double beta = params.beta_L();
    const double phi = reduce_flux(Phi_s);
    const double ib = Ib_uA / params.I0_uA;

    Phases x{0.0, self_consistent_delta(0.0, phi, beta, pi * phi)};
    if (Ib_uA > 0.0) {
        const double ic = critical_current(params, Phi_s);
        if (Ib_uA >= ic)
            throw BeyondCritical("bias " + std::to_string(Ib_uA) + " uA exceeds Ic(" +
                                 std::to_string(Phi_s) + ") = " + std::to_string(ic) + " uA");
        const double ic_ratio = ic / params.I0_uA;
        double done = 0.0;
        double step = std::min(ib, kMaxStepFraction * ic_ratio);
        int halvings = 0;
        while (done < ib) {
            const double target = std::min(ib, done + step);
            Phases trial = x;
            if (newton(trial, target, phi, beta)) {
                x = trial;
                done = target;
            } else {
                if (++halvings > 30)
                    throw NoConvergence("solve_working_point: continuation stalled at Ib/I0 = " +
                                        std::to_string(done));
                step *= 0.5;
            }
        }
    }

    WorkingPoint wp;
    wp.gamma_bar = x.gb;
    wp.delta_gamma = x.dg;
    wp.J_uA = params.I0_uA * std::cos(x.gb) * std::sin(x.dg);
    wp.Ib_uA = Ib_uA;
    wp.Phi_s = Phi_s;
    wp.residual_bias_uA =
        std::abs(Ib_uA - 2.0 * params.I0_uA * std::cos(x.dg) * std::sin(x.gb));
    const double L = params.L_pH * units::picohenry;
    const double flux_mismatch =
        x.dg - pi * (phi - L * wp.J_uA * units::microamp / units::flux_quantum);
    wp.residual_flux_uA = std::abs(flux_mismatch) * units::flux_quantum / (pi * L) / units::microamp;
    return wp;
}

double josephson_inductance(const SquidParams& params, const WorkingPoint& wp)
{
    const double cc = std::cos(wp.delta_gamma) * std::cos(wp.gamma_bar);
    if (std::abs(cc) < 1e-9)
        throw SingularPhase("cos(delta_gamma) cos(gamma_bar) vanishes at the working point");
    return units::flux_quantum / (2.0 * pi * params.I0_uA * units::microamp * cc);
}

namespace {
double tan_product_sq(const WorkingPoint& wp)
{
    const double tt = std::tan(wp.delta_gamma) * std::tan(wp.gamma_bar);
    return tt * tt;
}
}  // namespace

double re_transfer_smallbeta(const SquidParams& params, const WorkingPoint& wp)
{
    const double Lj = josephson_inductance(params, wp);
    return (1.0 - tan_product_sq(wp)) / (2.0 * Lj);
}

double re_transfer_function(const SquidParams& params, const WorkingPoint& wp)
{
    const double a = re_transfer_smallbeta(params, wp);
    const double L = params.L_pH * units::picohenry;
    return a / (1.0 + L * a);
}

}  // namespace squidcouple
