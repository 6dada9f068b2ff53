// dynamics.hpp: Time-dependent two-qubit Hamiltonian and its propagator
//
// Energies are E/h in GHz and times in ns, so a step of length dt evolves by
// exp(-i 2 pi H dt). Basis ordering is |00>, |01>, |10>, |11> with qubit 1 as
// the left tensor factor and sigma_z |0> = +|0>.

#pragma once

#include <array>
#include <vector>

#include "squidcouple/coupler.hpp"
#include "squidcouple/linalg.hpp"

namespace squidcouple {

/// H/h = -(e1/2) Z1 - (d1/2) X1 - (e2/2) Z2 - (d2/2) X2 - (K/2) Z1 Z2.
Matrix4c hamiltonian(const QubitPair& qp, double eps1_GHz, double eps2_GHz, double K_GHz);

/// Coupler bias pulse. t_on and t_off are the midpoints of the rising and
/// falling edges; edge_width is the 10%-90% rise time.
struct CouplerPulse {
    double t_on{0.0};
    double t_off{0.0};
    double K_on_GHz{0.0};
    double K_off_GHz{0.0};
    double edge_width{0.5};
};

/// Microwave window on one qubit: amplitude * w(t) * cos(2 pi f t + phase),
/// with t the absolute schedule time and w a raised-cosine taper of length
/// ramp at each end.
struct DriveWindow {
    double t_start{0.0};
    double t_end{0.0};
    double amplitude_GHz{0.0};
    double frequency_GHz{0.0};
    double phase{0.0};
    double ramp{0.5};
};

struct Crosstalk {
    double chi_bias{0.0};  // GHz of bias shift per GHz of coupler K
    int sign{+1};          // +1: energy biases drop while the coupler is on (K_on < K_off)
    double kappa_mw{0.0};  // GHz of K per GHz of summed drive
};

struct PulseSchedule {
    CouplerPulse coupler;
    std::array<std::vector<DriveWindow>, 2> drives;
    Crosstalk crosstalk;
    double total_duration{0.0};

    /// Throws InvalidArgument when the invariants on times do not hold.
    void validate() const;
};

/// Coupler edge profile in [0, 1]: product of tanh steps whose 10%-90% rise
/// spans edge_width.
double envelope(double t, const CouplerPulse& pulse);

/// Drive taper in [0, 1]; zero outside [t_start, t_end].
double drive_envelope(double t, const DriveWindow& window);

/// Summed microwave field on qubit (0 or 1) at time t, GHz.
double drive_field(const PulseSchedule& schedule, int qubit, double t);

struct Controls {
    double eps1_GHz;
    double eps2_GHz;
    double K_GHz;
};

/// Instantaneous controls including both crosstalk channels.
/// Throws OutOfRange outside [0, total_duration].
Controls controls_at(const PulseSchedule& schedule, const QubitPair& qp, double t);

/// Largest frequency scale in the schedule (GHz) used for the step check.
double max_frequency(const PulseSchedule& schedule, const QubitPair& qp);

/// Time-ordered product of midpoint-sampled exponentials over [t0, t1].
/// Throws StepTooLarge if dt > 1 / (40 f_max).
Unitary4 propagate(const PulseSchedule& schedule, const QubitPair& qp, double dt, double t0,
                   double t1);
Unitary4 propagate(const PulseSchedule& schedule, const QubitPair& qp, double dt);

struct TraceRow {
    double t, eps1, eps2, K;
};
std::vector<TraceRow> schedule_trace(const PulseSchedule& schedule, const QubitPair& qp,
                                     double sample_dt);

}  // namespace squidcouple
