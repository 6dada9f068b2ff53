// coupler.cpp

#include "squidcouple/coupler.hpp"

#include <cmath>

#include "squidcouple/errors.hpp"

namespace squidcouple {

namespace {

constexpr double kMaxBiasRatio = 0.95;

double current_product(const QubitPair& qp)
{
    return std::abs(qp.Iq1_uA * units::microamp) * std::abs(qp.Iq2_uA * units::microamp);
}

double shift_for(double Iq_uA, const QubitPair& qp, const SquidParams& params, double Ib_uA,
                 double Phi_s, double Ib_ref_uA)
{
    const double dJ = solve_working_point(params, Ib_uA, Phi_s).J_uA -
                      solve_working_point(params, Ib_ref_uA, Phi_s).J_uA;
    return units::joule_to_ghz(2.0 * std::abs(Iq_uA * units::microamp) * qp.Mqs_pH *
                               units::picohenry * dJ * units::microamp);
}

}  // namespace

void QubitPair::validate() const
{
    if (!(Iq1_uA > 0.0 && Iq2_uA > 0.0 && delta1_GHz > 0.0 && delta2_GHz > 0.0))
        throw InvalidArgument("QubitPair: persistent currents and tunnel splittings must be positive");
    if (!(Mqs_pH >= 0.0) || !(Mqq_pH >= 0.0))
        throw InvalidArgument("QubitPair: mutual inductances must be non-negative");
}

double direct_coupling(const QubitPair& qp)
{
    return units::joule_to_ghz(-2.0 * qp.Mqq_pH * units::picohenry * current_product(qp));
}

double squid_coupling(const QubitPair& qp, const SquidParams& params, const WorkingPoint& wp)
{
    const double M = qp.Mqs_pH * units::picohenry;
    if (M == 0.0) return 0.0;
    return units::joule_to_ghz(-2.0 * M * M * current_product(qp) * re_transfer_function(params, wp));
}

double net_coupling(const QubitPair& qp, const SquidParams& params, double Ib_uA, double Phi_s)
{
    const WorkingPoint wp = solve_working_point(params, Ib_uA, Phi_s);
    return direct_coupling(qp) + squid_coupling(qp, params, wp);
}

std::vector<CouplingSample> coupling_vs_bias(const QubitPair& qp, const SquidParams& params,
                                             double Phi_s, int n_points)
{
    if (n_points < 2) throw InvalidArgument("coupling_vs_bias: n_points must be >= 2");
    const double ic = critical_current(params, Phi_s);
    const double K0 = direct_coupling(qp);
    std::vector<CouplingSample> out;
    out.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double ratio = kMaxBiasRatio * i / (n_points - 1);
        const WorkingPoint wp = solve_working_point(params, ratio * ic, Phi_s);
        out.push_back({ratio, K0 + squid_coupling(qp, params, wp), wp});
    }
    return out;
}

double find_decoupling_bias(const QubitPair& qp, const SquidParams& params, double Phi_s)
{
    const double ic = critical_current(params, Phi_s);
    auto K = [&](double ratio) { return net_coupling(qp, params, ratio * ic, Phi_s); };

    // Bracket the first sign change on a coarse scan, then bisect.
    constexpr int kScan = 64;
    double lo = 0.0, k_lo = K(0.0);
    double hi = -1.0;
    for (int i = 1; i <= kScan; ++i) {
        const double r = kMaxBiasRatio * i / kScan;
        const double k = K(r);
        if (k == 0.0) return r;
        if ((k > 0.0) != (k_lo > 0.0)) {
            hi = r;
            break;
        }
        lo = r;
        k_lo = k;
    }
    if (hi < 0.0)
        throw NoSignChange("net coupling keeps one sign for Ib in [0, 0.95 Ic] at Phi_s = " +
                           std::to_string(Phi_s));
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double k = K(mid);
        if (std::abs(k) < 1e-9 || hi - lo < 1e-15) return mid;
        if ((k > 0.0) == (k_lo > 0.0)) {
            lo = mid;
            k_lo = k;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<BetaSample> max_ks_vs_beta(const QubitPair& qp, const SquidParams& params_template,
                                       const std::vector<double>& beta_grid, double Phi_s,
                                       double bias_ratio)
{
    std::vector<BetaSample> out;
    out.reserve(beta_grid.size());
    for (double beta : beta_grid) {
        BetaSample s{beta, 0.0, std::nullopt, std::nullopt, {}};
        try {
            const SquidParams p = params_template.with_beta(beta);
            s.I0_uA = p.I0_uA;
            const WorkingPoint wp = solve_working_point(p, bias_ratio * critical_current(p, Phi_s), Phi_s);
            s.Ks_GHz = squid_coupling(qp, p, wp);
            s.wp = wp;
        } catch (const Error& e) {
            s.error = std::string(e.kind()) + ": " + e.what();
        }
        out.push_back(std::move(s));
    }
    return out;
}

double bias_shift(const QubitPair& qp, const SquidParams& params, double Ib_uA, double Phi_s,
                  double Ib_ref_uA)
{
    return shift_for(qp.Iq1_uA, qp, params, Ib_uA, Phi_s, Ib_ref_uA);
}

double bias_shift_qubit2(const QubitPair& qp, const SquidParams& params, double Ib_uA,
                         double Phi_s, double Ib_ref_uA)
{
    return shift_for(qp.Iq2_uA, qp, params, Ib_uA, Phi_s, Ib_ref_uA);
}

}  // namespace squidcouple
