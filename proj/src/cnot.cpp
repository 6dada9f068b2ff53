// cnot.cpp

#include "squidcouple/cnot.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "squidcouple/coupler.hpp"
#include "squidcouple/nelder_mead.hpp"
#include "squidcouple/units.hpp"

namespace squidcouple {

namespace {

using units::pi;
using Vec = Eigen::VectorXd;

constexpr double kStage1Accept = 1e-3;
constexpr double kInfeasible = 0.1;
constexpr double kMaxDriveGHz = 1.5;
constexpr double kPenaltyValue = 10.0;
constexpr double kIdleCoupling = 1e-6;  // GHz; below this the idle coupler is treated as off

NelderMeadOptions fine_options(int budget, int restarts)
{
    NelderMeadOptions opt;
    opt.max_evaluations = budget;
    opt.x_tol = 1e-10;
    opt.f_tol = 1e-14;
    opt.f_target = 1e-12;
    opt.max_restarts = restarts;
    return opt;
}

const WeylPoint kCnotPoint{pi / 2, 0.0, 0.0};

double infidelity(const Unitary4& U, const Unitary4& target)
{
    return 1.0 - std::abs((target.adjoint() * U).trace()) / 4.0;
}

// exp(-i v.sigma)
Matrix2c su2(const Eigen::Vector3d& v)
{
    const double a = v.norm();
    if (a < 1e-15) return Matrix2c::Identity();
    const Eigen::Vector3d n = v / a;
    const double s = std::sin(a);
    Matrix2c U;
    U << cplx(std::cos(a), -s * n.z()), cplx(-s * n.y(), -s * n.x()),
         cplx(s * n.y(), -s * n.x()), cplx(std::cos(a), s * n.z());
    return U;
}

struct QubitData {
    double eps, delta, dE;
};

std::array<QubitData, 2> qubit_data(const QubitPair& qp)
{
    return {QubitData{qp.eps1_GHz, qp.delta1_GHz, std::hypot(qp.eps1_GHz, qp.delta1_GHz)},
            QubitData{qp.eps2_GHz, qp.delta2_GHz, std::hypot(qp.eps2_GHz, qp.delta2_GHz)}};
}

// Rotating-wave model of one driven window, used only to seed the search.
// In the qubit eigenframe the drive couples through sin(theta) = delta/dE;
// the two raised-cosine ramps together carry the area of one ramp length.
Matrix2c surrogate_window(const QubitData& q, double t0, double T, double A, double f, double phi,
                          double ramp)
{
    if (T <= 0.0) return Matrix2c::Identity();
    const double s = q.delta / q.dE, c = q.eps / q.dE;
    const Eigen::Vector3d n(s, 0.0, c), m(c, 0.0, -s), y(0.0, 1.0, 0.0);
    const double r = std::min(ramp, 0.5 * T);
    const double T_flat = T - r;
    const double detuning = q.dE - f;
    const double rabi = A * s / 4.0;
    const Eigen::Vector3d h = -0.5 * detuning * n + rabi * (std::cos(phi) * m - std::sin(phi) * y);
    const Matrix2c U_drive = su2(2.0 * pi * T_flat * h);
    const Matrix2c U_edge = su2(-pi * detuning * n * (0.5 * r));
    auto frame = [&](double t) { return su2(-pi * f * t * n); };
    return frame(t0 + T) * U_edge * U_drive * U_edge * frame(t0).adjoint();
}

// Midpoint propagation of one driven qubit on the same grid as propagate().
Matrix2c exact_window(const QubitData& q, const DriveWindow& w, double dt)
{
    const double span = w.t_end - w.t_start;
    if (span <= 0.0) return Matrix2c::Identity();
    const long steps = static_cast<long>(std::ceil(span / dt - 1e-9));
    const double h = span / steps;
    const double vx = -pi * h * q.delta;
    Matrix2c U = Matrix2c::Identity();
    for (long k = 0; k < steps; ++k) {
        const double t = w.t_start + (k + 0.5) * h;
        const double ez = q.eps + w.amplitude_GHz * drive_envelope(t, w) *
                                      std::cos(2.0 * pi * w.frequency_GHz * t + w.phase);
        const double vz = -pi * h * ez;
        const double a = std::hypot(vx, vz);
        const double c = std::cos(a), s = std::sin(a) / a;
        Matrix2c step;
        step << cplx(c, -s * vz), cplx(0.0, -s * vx), cplx(0.0, -s * vx), cplx(c, s * vz);
        U = step * U;
    }
    return U;
}

// Parameter vector layout for one segment: T, A1, phi1, A2, phi2, detuning.
LocalSegment segment_from(const Vec& x, int offset, int detuned)
{
    return {x(offset), x(offset + 1), x(offset + 2), x(offset + 3), x(offset + 4), x(offset + 5), detuned};
}

std::array<DriveWindow, 2> windows_for(const LocalSegment& s, const std::array<QubitData, 2>& q,
                                       double t0, double ramp)
{
    std::array<DriveWindow, 2> w;
    const double amp[2] = {s.amp1_GHz, s.amp2_GHz};
    const double phase[2] = {s.phase1, s.phase2};
    for (int k = 0; k < 2; ++k) {
        w[k].t_start = t0;
        w[k].t_end = t0 + s.duration_ns;
        w[k].amplitude_GHz = amp[k];
        w[k].frequency_GHz = q[k].dE + (k == s.detuned_qubit ? s.detuning_GHz : 0.0);
        w[k].phase = phase[k];
        w[k].ramp = ramp;
    }
    return w;
}

struct LocalProblem {
    const SynthesisConfig& cfg;
    const NonlocalResult& nonlocal;
    std::array<QubitData, 2> q;
    Unitary4 target;
    double T_lo, T_hi;
    Unitary4 U_mid;  // coupler fragment on the current grid

    double penalty(const LocalSegment& s) const
    {
        double p = 0.0;
        if (s.duration_ns < T_lo) p += (T_lo - s.duration_ns) * (T_lo - s.duration_ns);
        if (s.duration_ns > T_hi) p += (s.duration_ns - T_hi) * (s.duration_ns - T_hi);
        for (double a : {s.amp1_GHz, s.amp2_GHz})
            if (std::abs(a) > kMaxDriveGHz) p += (std::abs(a) - kMaxDriveGHz) * (std::abs(a) - kMaxDriveGHz);
        return p;
    }

    template <typename WindowProp>
    Unitary4 factorized(const std::array<LocalSegment, 2>& seg, WindowProp&& window_unitary) const
    {
        const double post_start = seg[0].duration_ns + nonlocal.fragment.total_duration;
        const auto pre = windows_for(seg[0], q, 0.0, cfg.drive_ramp_ns);
        const auto post = windows_for(seg[1], q, post_start, cfg.drive_ramp_ns);
        const Unitary4 U_pre = kron(window_unitary(0, pre[0]), window_unitary(1, pre[1]));
        const Unitary4 U_post = kron(window_unitary(0, post[0]), window_unitary(1, post[1]));
        return U_post * U_mid * U_pre;
    }

    Unitary4 surrogate(const std::array<LocalSegment, 2>& seg) const
    {
        return factorized(seg, [&](int k, const DriveWindow& w) {
            return surrogate_window(q[k], w.t_start, w.t_end - w.t_start, w.amplitude_GHz, w.frequency_GHz,
                                    w.phase, w.ramp);
        });
    }

    Unitary4 exact_uncoupled(const std::array<LocalSegment, 2>& seg, double dt) const
    {
        return factorized(seg, [&](int k, const DriveWindow& w) { return exact_window(q[k], w, dt); });
    }

    Unitary4 exact_full(const std::array<LocalSegment, 2>& seg, double dt) const
    {
        const PulseSchedule s = assemble_schedule(cfg, nonlocal, seg);
        const double post_start = seg[0].duration_ns + nonlocal.fragment.total_duration;
        const Unitary4 U_pre = propagate(s, cfg.qubits, dt, 0.0, seg[0].duration_ns);
        const Unitary4 U_post = propagate(s, cfg.qubits, dt, post_start, s.total_duration);
        return U_post * U_mid * U_pre;
    }
};

}  // namespace

void SynthesisConfig::validate() const
{
    qubits.validate();
    squid.validate();
    if (!(deviation_threshold > 0.0) || !(stage1_target > 0.0))
        throw InvalidArgument("synthesis: thresholds must be positive");
    if (stage1_budget < 1 || surrogate_budget < 1 || refine_budget < 1 || crosstalk_refine_budget < 1 || polish_budget < 1 ||
        surrogate_starts < 1 || refine_candidates < 1)
        throw InvalidArgument("synthesis: budgets must be >= 1");
    if (!(dt_search_ns > 0.0) || !(dt_report_ns > 0.0))
        throw InvalidArgument("synthesis: time steps must be positive");
    if (!(edge_width_ns > 0.0) || !(pad_ns >= 0.0) || !(drive_ramp_ns >= 0.0) || !(nominal_duration_ns > 0.0))
        throw InvalidArgument("synthesis: pulse shape parameters out of range");
    if (!(duration_tolerance > 0.0 && duration_tolerance < 1.0))
        throw InvalidArgument("synthesis: duration_tolerance must lie in (0, 1)");
    if (bias_shift_sign != 1 && bias_shift_sign != -1)
        throw InvalidArgument("synthesis: bias_shift_sign must be +1 or -1");
}

Crosstalk SynthesisConfig::crosstalk() const
{
    return {bias_crosstalk ? chi_bias : 0.0, bias_shift_sign, mw_crosstalk ? kappa_mw : 0.0};
}

SynthesisConfig make_synthesis_config(const QubitPair& qp, const SquidParams& squid, double Phi_s,
                                      double Ib_on_ratio)
{
    SynthesisConfig cfg;
    cfg.qubits = qp;
    cfg.squid = squid;
    cfg.Phi_s = Phi_s;
    const double Ic = critical_current(squid, Phi_s);
    const double Ib_on = Ib_on_ratio * Ic;
    const double Ib_off = find_decoupling_bias(qp, squid, Phi_s) * Ic;
    cfg.K_on_nominal_GHz = net_coupling(qp, squid, Ib_on, Phi_s);
    cfg.K_off_GHz = net_coupling(qp, squid, Ib_off, Phi_s);
    const double dK = cfg.K_on_nominal_GHz - cfg.K_off_GHz;
    if (dK == 0.0) throw InvalidArgument("synthesis: coupling bias equals the decoupling bias");
    cfg.chi_bias = std::abs(bias_shift(qp, squid, Ib_off, Phi_s, Ib_on)) / std::abs(dK);
    return cfg;
}

AnalyticSeed analytic_seed(const QubitPair& qp, int n)
{
    if (n < 1) throw InvalidArgument("analytic_seed: n must be >= 1");
    const TrajectoryParams tp = trajectory_params(qp);
    if (std::abs(tp.dE1_GHz - tp.dE2_GHz) <= 1e-12 * std::max(tp.dE1_GHz, tp.dE2_GHz))
        throw DegenerateSplittings("analytic_seed: qubit splittings coincide");
    if (tp.v == 0.0) throw DegenerateSplittings("analytic_seed: a qubit sits at zero bias");
    return {tp.K_for(n, -1.0), tp.t_K(n)};
}

AnalyticSeed crosstalk_aware_seed(const SynthesisConfig& cfg, int* n_out)
{
    const Crosstalk x = cfg.crosstalk();
    const double K_nom = cfg.K_on_nominal_GHz;
    const double sign = K_nom < 0.0 ? -1.0 : 1.0;
    auto shifted = [&](double K) {
        QubitPair qp = cfg.qubits;
        const double shift = x.chi_bias * (K - cfg.K_off_GHz) * x.sign;
        qp.eps1_GHz += shift;
        qp.eps2_GHz += shift;
        return qp;
    };
    // |K| that closes c1 = pi/2 at winding n, evaluated with biases shifted by K.
    auto required = [&](double mag, int n) {
        const TrajectoryParams tp = trajectory_params(shifted(sign * mag));
        return std::abs(tp.omega) / (4.0 * pi * n * std::abs(tp.v));
    };

    const TrajectoryParams tp0 = trajectory_params(shifted(K_nom));
    if (std::abs(tp0.omega) < 1e-12 || tp0.v == 0.0)
        throw DegenerateSplittings("crosstalk_aware_seed: degenerate splittings at the nominal coupling");
    const int n_est = std::max(1, static_cast<int>(std::lround(required(std::abs(K_nom), 1) / std::abs(K_nom))));

    AnalyticSeed best{0.0, 0.0};
    int best_n = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int n = std::max(1, n_est - 6); n <= n_est + 6; ++n) {
        double lo = 0.5 * std::abs(K_nom), hi = 1.5 * std::abs(K_nom);
        double g_lo = lo - required(lo, n), g_hi = hi - required(hi, n);
        if (!std::isfinite(g_lo) || !std::isfinite(g_hi) || g_lo * g_hi > 0.0) continue;
        for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double g = mid - required(mid, n);
            if ((g < 0.0) == (g_lo < 0.0)) { lo = mid; g_lo = g; }
            else hi = mid;
        }
        const double mag = 0.5 * (lo + hi);
        const double gap = std::abs(mag - std::abs(K_nom));
        if (gap < best_gap) {
            best_gap = gap;
            best_n = n;
            const TrajectoryParams tp = trajectory_params(shifted(sign * mag));
            best = {sign * mag, n * pi / std::abs(tp.omega)};
        }
    }
    if (best_n == 0) {
        // No self-consistent root nearby: fall back to the shift at nominal K.
        best_n = n_est;
        best = {sign * required(std::abs(K_nom), n_est), n_est * pi / std::abs(tp0.omega)};
    }
    if (n_out) *n_out = best_n;
    return best;
}

PulseSchedule nonlocal_fragment(const SynthesisConfig& cfg, double K_on_GHz, double t_K_ns)
{
    PulseSchedule s;
    s.coupler = {cfg.pad_ns, cfg.pad_ns + t_K_ns, K_on_GHz, cfg.K_off_GHz, cfg.edge_width_ns};
    s.crosstalk = cfg.crosstalk();
    s.total_duration = t_K_ns + 2.0 * cfg.pad_ns;
    return s;
}

NonlocalResult optimize_nonlocal(const SynthesisConfig& cfg)
{
    cfg.validate();
    const AnalyticSeed seed = crosstalk_aware_seed(cfg);
    const int dim = cfg.optimize_biases ? 4 : 2;

    auto unpack = [&](const Vec& x) {
        QubitPair qp = cfg.qubits;
        if (cfg.optimize_biases) {
            qp.eps1_GHz = x(2);
            qp.eps2_GHz = x(3);
        }
        return qp;
    };
    auto fragment_unitary = [&](const Vec& x, const QubitPair& qp) {
        const PulseSchedule s = nonlocal_fragment(cfg, x(0), x(1));
        return propagate(s, qp, cfg.dt_search_ns);
    };
    auto objective = [&](const Vec& x) {
        if (!(x(1) > 0.0)) return kPenaltyValue;
        try {
            return weyl_distance(fragment_unitary(x, unpack(x)), kCnotPoint);
        } catch (const StepTooLarge&) {
            return kPenaltyValue;
        }
    };

    Vec x0(dim), step(dim);
    x0(0) = seed.K_GHz;
    x0(1) = seed.t_K_ns;
    step(0) = 0.01;
    step(1) = 0.05;
    if (cfg.optimize_biases) {
        x0(2) = cfg.qubits.eps1_GHz;
        x0(3) = cfg.qubits.eps2_GHz;
        step(2) = step(3) = 0.05;
    }
    NelderMeadOptions opt;
    opt.max_evaluations = cfg.stage1_budget;
    opt.f_target = cfg.stage1_target;
    opt.x_tol = 1e-10;
    const auto res = nelder_mead(objective, x0, step, opt);
    if (!(res.f < kStage1Accept))
        throw BudgetExhausted("optimize_nonlocal: Weyl distance " + std::to_string(res.f) + " after " +
                                  std::to_string(res.evaluations) + " evaluations",
                              std::vector<double>(res.x.data(), res.x.data() + dim), res.f, res.evaluations);

    NonlocalResult out;
    const QubitPair qp = unpack(res.x);
    out.K_on_GHz = res.x(0);
    out.t_K_ns = res.x(1);
    out.eps1_GHz = qp.eps1_GHz;
    out.eps2_GHz = qp.eps2_GHz;
    out.weyl_distance = res.f;
    out.evaluations = res.evaluations;
    out.fragment = nonlocal_fragment(cfg, out.K_on_GHz, out.t_K_ns);
    out.unitary = fragment_unitary(res.x, qp);
    return out;
}

PulseSchedule assemble_schedule(const SynthesisConfig& cfg, const NonlocalResult& nonlocal,
                                const std::array<LocalSegment, 2>& seg)
{
    QubitPair qp = cfg.qubits;
    qp.eps1_GHz = nonlocal.eps1_GHz;
    qp.eps2_GHz = nonlocal.eps2_GHz;
    const auto q = qubit_data(qp);

    PulseSchedule s = nonlocal.fragment;
    const double shift = seg[0].duration_ns;
    s.coupler.t_on += shift;
    s.coupler.t_off += shift;
    const double post_start = shift + nonlocal.fragment.total_duration;
    s.total_duration = post_start + seg[1].duration_ns;
    s.crosstalk = cfg.crosstalk();
    if (seg[0].duration_ns > 0.0)
        for (int k = 0; k < 2; ++k) s.drives[k].push_back(windows_for(seg[0], q, 0.0, cfg.drive_ramp_ns)[k]);
    if (seg[1].duration_ns > 0.0)
        for (int k = 0; k < 2; ++k) s.drives[k].push_back(windows_for(seg[1], q, post_start, cfg.drive_ramp_ns)[k]);
    return s;
}

LocalResult optimize_local_gates(const SynthesisConfig& cfg, const NonlocalResult& nonlocal)
{
    cfg.validate();
    SynthesisConfig local_cfg = cfg;
    local_cfg.qubits.eps1_GHz = nonlocal.eps1_GHz;
    local_cfg.qubits.eps2_GHz = nonlocal.eps2_GHz;
    const Unitary4 target = cnot_matrix(cfg.control_is_qubit1);

    LocalResult out;
    const double base_dev = computational_deviation(nonlocal.unitary, target);
    if (base_dev <= cfg.deviation_threshold) {
        out.schedule = assemble_schedule(cfg, nonlocal, out.segments);
        out.deviation = base_dev;
        return out;
    }

    const double T_nom = 0.5 * (cfg.nominal_duration_ns - nonlocal.fragment.total_duration);
    if (!(T_nom > cfg.drive_ramp_ns))
        throw InfeasibleLocalGate("optimize_local_gates: no room for local segments within the nominal duration");
    LocalProblem prob{local_cfg,
                      nonlocal,
                      qubit_data(local_cfg.qubits),
                      target,
                      (1.0 - cfg.duration_tolerance) * T_nom,
                      (1.0 + cfg.duration_tolerance) * T_nom,
                      nonlocal.unitary};

    struct Candidate {
        double f;
        Vec x;
        int wa, wb;
    };
    auto segments_of = [](const Vec& x, int wa, int wb) {
        return std::array<LocalSegment, 2>{segment_from(x, 0, wa), segment_from(x, 6, wb)};
    };
    auto make_objective = [&](int wa, int wb, auto&& unitary_of) {
        return [&, wa, wb, unitary_of](const Vec& x) {
            const auto seg = segments_of(x, wa, wb);
            const double pen = prob.penalty(seg[0]) + prob.penalty(seg[1]);
            if (pen > 1.0) return kPenaltyValue + pen;
            try {
                return infidelity(unitary_of(seg), target) + pen;
            } catch (const StepTooLarge&) {
                return kPenaltyValue + pen;
            }
        };
    };

    Vec coarse_step(12), fine_step(12);
    for (int s = 0; s < 2; ++s) {
        coarse_step.segment(6 * s, 6) << 0.5, 0.1, 0.3, 0.1, 0.3, 0.05;
        fine_step.segment(6 * s, 6) << 0.05, 0.02, 0.05, 0.02, 0.05, 0.01;
    }

    // Global stage on the rotating-wave model.
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> U01(0.0, 1.0);
    std::vector<Candidate> pool;
    for (int wa = 0; wa < 2; ++wa) {
        for (int wb = 0; wb < 2; ++wb) {
            auto f = make_objective(wa, wb, [&](const auto& seg) { return prob.surrogate(seg); });
            for (int k = 0; k < cfg.surrogate_starts; ++k) {
                Vec x0(12);
                for (int s = 0; s < 2; ++s) {
                    x0(6 * s) = prob.T_lo + (prob.T_hi - prob.T_lo) * U01(rng);
                    x0(6 * s + 1) = U01(rng);
                    x0(6 * s + 2) = 2.0 * pi * U01(rng);
                    x0(6 * s + 3) = U01(rng);
                    x0(6 * s + 4) = 2.0 * pi * U01(rng);
                    x0(6 * s + 5) = 0.4 * U01(rng) - 0.2;
                }
                NelderMeadOptions opt;
                opt.max_evaluations = cfg.surrogate_budget;
                opt.x_tol = 1e-8;
                opt.f_tol = 1e-12;
                opt.max_restarts = 2;
                const auto r = nelder_mead(f, x0, coarse_step, opt);
                out.evaluations += r.evaluations;
                pool.push_back({r.f, r.x, wa, wb});
            }
        }
    }
    std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) { return a.f < b.f; });

    // Local refinement with exact single-qubit propagation (coupler idle).
    const double dt_s = cfg.dt_search_ns, dt_r = cfg.dt_report_ns;
    Candidate best{std::numeric_limits<double>::infinity(), Vec(), 0, 0};
    const int n_refine = std::min<int>(cfg.refine_candidates, static_cast<int>(pool.size()));
    for (int i = 0; i < n_refine; ++i) {
        const Candidate& c = pool[i];
        auto f = make_objective(c.wa, c.wb, [&](const auto& seg) { return prob.exact_uncoupled(seg, dt_s); });
        const auto r = nelder_mead(f, c.x, fine_step, fine_options(cfg.refine_budget, 3));
        out.evaluations += r.evaluations;
        if (r.f < best.f) best = {r.f, r.x, c.wa, c.wb};
    }

    // With the coupler not fully idle (microwave crosstalk or K_off != 0) the
    // segments no longer factorize; continue on the full two-qubit propagator.
    const bool coupled = (cfg.mw_crosstalk && cfg.kappa_mw != 0.0) || std::abs(cfg.K_off_GHz) > kIdleCoupling;
    auto unitary_at = [&](double dt) {
        return [&, dt](const auto& seg) { return coupled ? prob.exact_full(seg, dt) : prob.exact_uncoupled(seg, dt); };
    };
    if (coupled) {
        auto f = make_objective(best.wa, best.wb, unitary_at(dt_s));
        const auto r = nelder_mead(f, best.x, fine_step, fine_options(cfg.crosstalk_refine_budget, 2));
        out.evaluations += r.evaluations;
        best = {r.f, r.x, best.wa, best.wb};
    }

    // Midpoint sampling of the ~10 GHz drive leaves a few 1e-3 of step-size
    // error at dt_search, so the last pass runs on the report grid.
    prob.U_mid = propagate(nonlocal.fragment, local_cfg.qubits, dt_r);
    {
        auto f = make_objective(best.wa, best.wb, unitary_at(dt_r));
        const auto r = nelder_mead(f, best.x, Vec(0.2 * fine_step), fine_options(cfg.polish_budget, 1));
        out.evaluations += r.evaluations;
        best = {r.f, r.x, best.wa, best.wb};
    }

    out.segments = segments_of(best.x, best.wa, best.wb);
    out.schedule = assemble_schedule(cfg, nonlocal, out.segments);
    const Unitary4 U = unitary_at(dt_r)(out.segments);
    out.deviation = computational_deviation(U, target);

    std::vector<double> bx(best.x.data(), best.x.data() + best.x.size());
    if (out.deviation > kInfeasible)
        throw InfeasibleLocalGate("optimize_local_gates: deviation plateaued at " + std::to_string(out.deviation));
    if (out.deviation > cfg.deviation_threshold)
        throw BudgetExhausted("optimize_local_gates: deviation " + std::to_string(out.deviation) +
                                  " above threshold",
                              std::move(bx), out.deviation, out.evaluations);
    return out;
}

GateReport report_for(const PulseSchedule& schedule, const QubitPair& qp, double dt, bool control_is_qubit1)
{
    return make_gate_report(propagate(schedule, qp, dt), cnot_matrix(control_is_qubit1));
}

SynthesisResult synthesize_cnot(const SynthesisConfig& cfg)
{
    cfg.validate();
    const NonlocalResult nonlocal = optimize_nonlocal(cfg);
    const LocalResult local = optimize_local_gates(cfg, nonlocal);

    SynthesisResult out;
    out.schedule = local.schedule;
    out.qubits = cfg.qubits;
    out.qubits.eps1_GHz = nonlocal.eps1_GHz;
    out.qubits.eps2_GHz = nonlocal.eps2_GHz;
    out.segments = local.segments;
    out.stage1_weyl_distance = nonlocal.weyl_distance;
    out.stage2_deviation = local.deviation;
    out.stage1_evaluations = nonlocal.evaluations;
    out.stage2_evaluations = local.evaluations;
    out.seed = cfg.seed;
    out.dt_report_ns = cfg.dt_report_ns;
    out.control_is_qubit1 = cfg.control_is_qubit1;
    out.report = report_for(out.schedule, out.qubits, cfg.dt_report_ns, cfg.control_is_qubit1);
    return out;
}

}  // namespace squidcouple
