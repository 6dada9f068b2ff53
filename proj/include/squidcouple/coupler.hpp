// coupler.hpp: Direct, SQUID-mediated and net qubit-qubit coupling

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "squidcouple/squid.hpp"

namespace squidcouple {

struct QubitPair {
    double Iq1_uA{0.46};
    double Iq2_uA{0.46};
    double delta1_GHz{5.0};
    double delta2_GHz{3.0};
    double eps1_GHz{8.06};
    double eps2_GHz{2.03};
    double Mqs_pH{33.0};
    double Mqq_pH{0.25};

    void validate() const;
};

/// K0/h = -2 Mqq |Iq1| |Iq2| / h, in GHz.
double direct_coupling(const QubitPair& qp);

/// Ks/h = -2 Mqs^2 |Iq1| |Iq2| Re(dJ/dPhi_s) / h, in GHz.
double squid_coupling(const QubitPair& qp, const SquidParams& params, const WorkingPoint& wp);

/// (K0 + Ks)/h at the given bias, in GHz.
double net_coupling(const QubitPair& qp, const SquidParams& params, double Ib_uA, double Phi_s);

struct CouplingSample {
    double Ib_ratio;  // Ib / Ic(Phi_s)
    double K_GHz;
    WorkingPoint wp;
};

/// Net coupling on a uniform grid of Ib from 0 to 0.95 Ic(Phi_s).
std::vector<CouplingSample> coupling_vs_bias(const QubitPair& qp, const SquidParams& params,
                                             double Phi_s, int n_points);

/// Ib/Ic(Phi_s) at which the net coupling vanishes. Throws NoSignChange when
/// K keeps one sign over [0, 0.95 Ic].
double find_decoupling_bias(const QubitPair& qp, const SquidParams& params, double Phi_s);

struct BetaSample {
    double beta_L;
    double I0_uA;
    std::optional<double> Ks_GHz;  // empty when the solver failed at this point
    std::optional<WorkingPoint> wp;
    std::string error;
};

/// Ks at Ib = bias_ratio * Ic(Phi_s) for each beta_L, holding L fixed and
/// varying I0.
std::vector<BetaSample> max_ks_vs_beta(const QubitPair& qp, const SquidParams& params_template,
                                       const std::vector<double>& beta_grid,
                                       double Phi_s = 0.45, double bias_ratio = 0.85);

/// Qubit energy-bias shift 2 |Iq| Mqs (J(Ib) - J(Ib_ref)) / h in GHz, for
/// qubit 1 (qubit 2 uses Iq2; see bias_shift_qubit2).
double bias_shift(const QubitPair& qp, const SquidParams& params, double Ib_uA, double Phi_s,
                  double Ib_ref_uA);
double bias_shift_qubit2(const QubitPair& qp, const SquidParams& params, double Ib_uA,
                         double Phi_s, double Ib_ref_uA);

}  // namespace squidcouple
