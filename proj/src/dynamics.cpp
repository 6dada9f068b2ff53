// dynamics.cpp

#include "squidcouple/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "squidcouple/errors.hpp"

namespace squidcouple {

namespace {

using units::pi;

constexpr long kReunitarizeEvery = 10000;

// tanh step 0.5 (1 + tanh(x / tau)) rises from 0.1 to 0.9 over 2 tau atanh(0.8).
double edge_tau(double edge_width) { return edge_width / (2.0 * std::atanh(0.8)); }

}  // namespace

Matrix4c hamiltonian(const QubitPair& qp, double eps1_GHz, double eps2_GHz, double K_GHz)
{
    // Written out entrywise; this sits in the innermost propagation loop.
    const double z1 = -0.5 * eps1_GHz, x1 = -0.5 * qp.delta1_GHz;
    const double z2 = -0.5 * eps2_GHz, x2 = -0.5 * qp.delta2_GHz;
    const double zz = -0.5 * K_GHz;
    Matrix4c H;
    H << z1 + z2 + zz, x2, x1, 0.0,
         x2, z1 - z2 - zz, 0.0, x1,
         x1, 0.0, -z1 + z2 - zz, x2,
         0.0, x1, x2, -z1 - z2 + zz;
    return H;
}

void PulseSchedule::validate() const
{
    if (!(total_duration >= 0.0)) throw InvalidArgument("schedule: total_duration must be >= 0");
    if (!(coupler.edge_width > 0.0)) throw InvalidArgument("schedule: edge_width must be positive");
    if (!(coupler.t_on >= 0.0 && coupler.t_on < coupler.t_off && coupler.t_off <= total_duration))
        throw InvalidArgument("schedule: need 0 <= t_on < t_off <= total_duration");
    for (const auto& windows : drives)
        for (const auto& w : windows)
            if (!(w.t_start >= 0.0 && w.t_start <= w.t_end && w.t_end <= total_duration && w.ramp >= 0.0))
                throw InvalidArgument("schedule: drive window outside [0, total_duration]");
    if (crosstalk.sign != 1 && crosstalk.sign != -1)
        throw InvalidArgument("schedule: crosstalk sign must be +1 or -1");
}

double envelope(double t, const CouplerPulse& pulse)
{
    const double tau = edge_tau(pulse.edge_width);
    return 0.5 * (std::tanh((t - pulse.t_on) / tau) - std::tanh((t - pulse.t_off) / tau));
}

double drive_envelope(double t, const DriveWindow& w)
{
    if (t <= w.t_start || t >= w.t_end) return 0.0;
    const double ramp = std::min(w.ramp, 0.5 * (w.t_end - w.t_start));
    if (ramp <= 0.0) return 1.0;
    const double from_edge = std::min(t - w.t_start, w.t_end - t);
    if (from_edge >= ramp) return 1.0;
    return 0.5 * (1.0 - std::cos(pi * from_edge / ramp));
}

double drive_field(const PulseSchedule& schedule, int qubit, double t)
{
    double field = 0.0;
    for (const auto& w : schedule.drives[qubit]) {
        const double env = drive_envelope(t, w);
        if (env != 0.0) field += w.amplitude_GHz * env * std::cos(2.0 * pi * w.frequency_GHz * t + w.phase);
    }
    return field;
}

Controls controls_at(const PulseSchedule& schedule, const QubitPair& qp, double t)
{
    if (!(t >= 0.0 && t <= schedule.total_duration))
        throw OutOfRange("controls_at: t = " + std::to_string(t) + " outside the schedule");
    const auto& c = schedule.coupler;
    const auto& x = schedule.crosstalk;
    const double K_base = c.K_off_GHz + (c.K_on_GHz - c.K_off_GHz) * envelope(t, c);
    const double shift = x.chi_bias * (K_base - c.K_off_GHz) * x.sign;
    const double mw1 = drive_field(schedule, 0, t);
    const double mw2 = drive_field(schedule, 1, t);
    return {qp.eps1_GHz + mw1 + shift, qp.eps2_GHz + mw2 + shift, K_base + x.kappa_mw * (mw1 + mw2)};
}

double max_frequency(const PulseSchedule& schedule, const QubitPair& qp)
{
    const auto& c = schedule.coupler;
    const double shift = std::abs(schedule.crosstalk.chi_bias * (c.K_on_GHz - c.K_off_GHz));
    double f_max = 0.0;
    const std::array<double, 2> eps{qp.eps1_GHz, qp.eps2_GHz};
    const std::array<double, 2> tunnel{qp.delta1_GHz, qp.delta2_GHz};
    for (int q = 0; q < 2; ++q) {
        double amp = 0.0;
        for (const auto& w : schedule.drives[q]) {
            amp += std::abs(w.amplitude_GHz);
            f_max = std::max(f_max, std::abs(w.frequency_GHz));
        }
        f_max = std::max(f_max, std::hypot(std::abs(eps[q]) + shift + amp, tunnel[q]));
    }
    return f_max;
}

Unitary4 propagate(const PulseSchedule& schedule, const QubitPair& qp, double dt, double t0, double t1)
{
    if (!(dt > 0.0)) throw InvalidArgument("propagate: dt must be positive");
    if (!(t0 >= 0.0 && t0 <= t1 && t1 <= schedule.total_duration + 1e-12))
        throw OutOfRange("propagate: interval outside the schedule");
    const double f_max = max_frequency(schedule, qp);
    if (f_max > 0.0 && dt > 1.0 / (40.0 * f_max) * (1.0 + 1e-12))
        throw StepTooLarge("propagate: dt = " + std::to_string(dt) + " ns exceeds 1/(40 f_max) = " +
                           std::to_string(1.0 / (40.0 * f_max)) + " ns");

    Unitary4 U = Unitary4::Identity();
    const double span = t1 - t0;
    if (span <= 0.0) return U;
    const long steps = static_cast<long>(std::ceil(span / dt - 1e-9));
    const double h = span / steps;
    for (long k = 0; k < steps; ++k) {
        const double t = std::min(t0 + (k + 0.5) * h, schedule.total_duration);
        const Controls c = controls_at(schedule, qp, t);
        U = expi_small(hamiltonian(qp, c.eps1_GHz, c.eps2_GHz, c.K_GHz), 2.0 * pi * h) * U;
        if ((k + 1) % kReunitarizeEvery == 0) U = polar_unitary(U);
    }
    return U;
}

Unitary4 propagate(const PulseSchedule& schedule, const QubitPair& qp, double dt)
{
    return propagate(schedule, qp, dt, 0.0, schedule.total_duration);
}

std::vector<TraceRow> schedule_trace(const PulseSchedule& schedule, const QubitPair& qp, double sample_dt)
{
    if (!(sample_dt > 0.0)) throw InvalidArgument("schedule_trace: sample_dt must be positive");
    std::vector<TraceRow> rows;
    const long n = static_cast<long>(std::floor(schedule.total_duration / sample_dt + 1e-9));
    rows.reserve(n + 1);
    for (long k = 0; k <= n; ++k) {
        const double t = std::min(k * sample_dt, schedule.total_duration);
        const Controls c = controls_at(schedule, qp, t);
        rows.push_back({t, c.eps1_GHz, c.eps2_GHz, c.K_GHz});
    }
    return rows;
}

}  // namespace squidcouple
