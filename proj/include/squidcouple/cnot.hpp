// cnot.hpp: Two-stage CNOT synthesis
//
// Stage 1 tunes a single constant-coupling pulse until the propagated
// fragment sits on the CNOT Weyl point. Stage 2 wraps it in one pre and one
// post local segment, each made of two simultaneous microwave windows of
// equal length: one qubit is driven on resonance, the other with a searched
// detuning.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "squidcouple/dynamics.hpp"
#include "squidcouple/errors.hpp"
#include "squidcouple/gates.hpp"

namespace squidcouple {

/// Optimizer ran out of evaluations before reaching its acceptance level.
/// Carries the best parameters seen and their objective value.
struct BudgetExhausted : Error {
    BudgetExhausted(const std::string& what, std::vector<double> best_x, double best_f, int evaluations)
        : Error(what), best_x(std::move(best_x)), best_f(best_f), evaluations(evaluations)
    {
    }
    const char* kind() const noexcept override { return "BudgetExhausted"; }

    std::vector<double> best_x;
    double best_f;
    int evaluations;
};

struct SynthesisConfig {
    QubitPair qubits;
    SquidParams squid;
    double Phi_s{0.45};

    double K_on_nominal_GHz{-0.30};  // net coupling at the coupling bias
    double K_off_GHz{0.0};           // net coupling at the decoupling bias
    double chi_bias{0.0};            // bias shift per unit K change
    int bias_shift_sign{+1};
    double kappa_mw{0.014};
    bool bias_crosstalk{true};
    bool mw_crosstalk{true};

    double edge_width_ns{0.5};
    double pad_ns{1.5};        // edge midpoint to nearest drive window
    double drive_ramp_ns{0.5};
    double nominal_duration_ns{29.35};
    double duration_tolerance{0.2};  // local segment length bounds around the nominal share

    double deviation_threshold{0.02};
    double stage1_target{1e-7};      // search stops here; 1e-3 is the acceptance level
    int stage1_budget{400};
    int surrogate_starts{10};        // per detuned-qubit assignment
    int surrogate_budget{4000};
    int refine_candidates{3};
    int refine_budget{3000};
    int crosstalk_refine_budget{3000};
    int polish_budget{600};
    std::uint64_t seed{1};
    double dt_search_ns{2e-3};
    double dt_report_ns{5e-4};
    bool control_is_qubit1{true};
    bool optimize_biases{false};

    /// Throws InvalidArgument on non-positive thresholds or budgets.
    void validate() const;
    Crosstalk crosstalk() const;
};

/// Fills the coupling levels and the bias-crosstalk coefficient from the
/// device: K_on at Ib = Ib_on_ratio * Ic(Phi_s), K_off at the decoupling bias.
SynthesisConfig make_synthesis_config(const QubitPair& qp, const SquidParams& squid, double Phi_s,
                                      double Ib_on_ratio = 0.0);

struct AnalyticSeed {
    double K_GHz;
    double t_K_ns;
};

/// Closed-form (K, t_K) for winding number n; K is negative.
/// Throws DegenerateSplittings when the two qubit splittings coincide.
AnalyticSeed analytic_seed(const QubitPair& qp, int n);

/// Seed used by stage 1: analytic pair evaluated at biases shifted by the
/// coupler crosstalk (solved self-consistently in K), with n chosen so that
/// K is closest to the nominal coupling.
AnalyticSeed crosstalk_aware_seed(const SynthesisConfig& cfg, int* n_out = nullptr);

/// Schedule containing only the coupler pulse, padded on both sides.
PulseSchedule nonlocal_fragment(const SynthesisConfig& cfg, double K_on_GHz, double t_K_ns);

struct NonlocalResult {
    double K_on_GHz{0.0};
    double t_K_ns{0.0};
    double eps1_GHz{0.0};
    double eps2_GHz{0.0};
    double weyl_distance{0.0};
    int evaluations{0};
    PulseSchedule fragment;
    Unitary4 unitary{Unitary4::Identity()};  // fragment propagated at dt_search
};

/// Throws BudgetExhausted (best x = K, t_K[, eps1, eps2]) when the Weyl
/// distance is still >= 1e-3 after the budget.
NonlocalResult optimize_nonlocal(const SynthesisConfig& cfg);

struct LocalSegment {
    double duration_ns{0.0};
    double amp1_GHz{0.0};
    double phase1{0.0};
    double amp2_GHz{0.0};
    double phase2{0.0};
    double detuning_GHz{0.0};
    int detuned_qubit{1};  // 0 or 1
};

struct LocalResult {
    PulseSchedule schedule;
    std::array<LocalSegment, 2> segments;  // pre, post
    double deviation{0.0};                 // at dt_report, segments only
    int evaluations{0};
};

/// Assembles pre segment, coupler fragment and post segment into one
/// schedule. Drive phases refer to absolute schedule time.
PulseSchedule assemble_schedule(const SynthesisConfig& cfg, const NonlocalResult& nonlocal,
                                const std::array<LocalSegment, 2>& segments);

/// Throws InfeasibleLocalGate when the best deviation exceeds 0.1 and
/// BudgetExhausted when it lies between the threshold and 0.1.
LocalResult optimize_local_gates(const SynthesisConfig& cfg, const NonlocalResult& nonlocal);

struct SynthesisResult {
    PulseSchedule schedule;
    GateReport report;  // at dt_report, from the whole schedule
    QubitPair qubits;   // biases used by the schedule
    std::array<LocalSegment, 2> segments;
    double stage1_weyl_distance{0.0};
    double stage2_deviation{0.0};
    int stage1_evaluations{0};
    int stage2_evaluations{0};
    std::uint64_t seed{0};
    double dt_report_ns{0.0};
    bool control_is_qubit1{true};
};

SynthesisResult synthesize_cnot(const SynthesisConfig& cfg);

/// Report recomputed from the schedule alone.
GateReport report_for(const PulseSchedule& schedule, const QubitPair& qp, double dt,
                      bool control_is_qubit1 = true);

}  // namespace squidcouple
