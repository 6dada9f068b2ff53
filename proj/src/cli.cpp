// cli.cpp

#include "squidcouple/cli.hpp"

#include <cstdio>
#include <sstream>

#include "squidcouple/errors.hpp"
#include "squidcouple/units.hpp"

namespace squidcouple {

namespace {

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string provenance(const std::string& command, const DeviceConfig& cfg, std::uint64_t seed)
{
    return "# squidcouple " + command + " config_hash=" + config_hash(to_json(cfg)) +
           " seed=" + std::to_string(seed) + "\n";
}

void require_points(int n, int minimum = 2)
{
    if (n < minimum) throw InvalidArgument("--points must be >= " + std::to_string(minimum));
}

json segment_json(const LocalSegment& s)
{
    return {{"duration_ns", s.duration_ns},     {"amp1_GHz", s.amp1_GHz}, {"phase1_rad", s.phase1},
            {"amp2_GHz", s.amp2_GHz},           {"phase2_rad", s.phase2}, {"detuning_GHz", s.detuning_GHz},
            {"detuned_qubit", s.detuned_qubit + 1}};
}

}  // namespace

std::string cmd_squid_curves(const DeviceConfig& cfg, const std::vector<double>& ib_ratios, int n_points,
                             std::uint64_t seed, double phi_min, double phi_max)
{
    require_points(n_points);
    if (ib_ratios.empty()) throw InvalidArgument("squid-curves needs at least one bias ratio");
    const double Ic_ref = critical_current(cfg.squid, cfg.Phi_s);

    std::ostringstream out;
    out << provenance("squid-curves", cfg, seed);
    out << "# Ib = ratio * Ic(" << num(cfg.Phi_s) << " Phi0) = ratio * " << num(Ic_ref)
        << " uA; failed points hold the error kind\n";
    out << "Phi_s_Phi0,Ic_uA";
    for (double r : ib_ratios) out << ",J_uA@" << num(r);
    out << "\n";
    for (int i = 0; i < n_points; ++i) {
        const double phi = phi_min + (phi_max - phi_min) * i / (n_points - 1);
        out << num(phi) << "," << num(critical_current(cfg.squid, phi));
        for (double r : ib_ratios) {
            out << ",";
            try {
                out << num(solve_working_point(cfg.squid, r * Ic_ref, phi).J_uA);
            } catch (const Error& e) {
                out << e.kind();
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string cmd_coupling_sweep(const DeviceConfig& cfg, int n_points, std::uint64_t seed)
{
    require_points(n_points);
    const double Ic = critical_current(cfg.squid, cfg.Phi_s);
    const double K0 = direct_coupling(cfg.qubits);
    std::ostringstream out;
    out << provenance("coupling-sweep", cfg, seed);
    out << "# Phi_s = " << num(cfg.Phi_s) << " Phi0, Ic = " << num(Ic) << " uA\n";
    out << "Ib_ratio,Ib_uA,K_GHz,K0_GHz,Ks_GHz,gamma_bar_rad,delta_gamma_rad,J_uA\n";
    for (const auto& s : coupling_vs_bias(cfg.qubits, cfg.squid, cfg.Phi_s, n_points)) {
        out << num(s.Ib_ratio) << "," << num(s.wp.Ib_uA) << "," << num(s.K_GHz) << "," << num(K0) << ","
            << num(s.K_GHz - K0) << "," << num(s.wp.gamma_bar) << "," << num(s.wp.delta_gamma) << ","
            << num(s.wp.J_uA) << "\n";
    }
    return out.str();
}

std::string cmd_beta_sweep(const DeviceConfig& cfg, int n_points, std::uint64_t seed, double beta_min,
                           double beta_max, double bias_ratio)
{
    require_points(n_points);
    if (!(beta_min > 0.0 && beta_min < beta_max)) throw InvalidArgument("beta range must satisfy 0 < min < max");
    std::vector<double> grid(n_points);
    for (int i = 0; i < n_points; ++i) grid[i] = beta_min + (beta_max - beta_min) * i / (n_points - 1);
    std::ostringstream out;
    out << provenance("beta-sweep", cfg, seed);
    out << "# L = " << num(cfg.squid.L_pH) << " pH fixed, Ib = " << num(bias_ratio) << " Ic(" << num(cfg.Phi_s)
        << " Phi0)\n";
    out << "beta_L,I0_uA,Ks_GHz,status\n";
    for (const auto& s : max_ks_vs_beta(cfg.qubits, cfg.squid, grid, cfg.Phi_s, bias_ratio)) {
        out << num(s.beta_L) << "," << num(s.I0_uA) << ",";
        if (s.Ks_GHz) out << num(*s.Ks_GHz) << ",ok\n";
        else out << "," << s.error << "\n";
    }
    return out.str();
}

std::string cmd_noise(const DeviceConfig& cfg, int n_points, std::uint64_t seed)
{
    require_points(n_points);
    const double Ic = critical_current(cfg.squid, cfg.Phi_s);
    const double ratio = find_decoupling_bias(cfg.qubits, cfg.squid, cfg.Phi_s);
    const WorkingPoint wp = solve_working_point(cfg.squid, ratio * Ic, cfg.Phi_s);
    const WorkingPoint wp0 = solve_working_point(cfg.squid, 0.0, cfg.Phi_s);
    const double alpha = ohmic_alpha(cfg.qubits, cfg.squid, wp, cfg.noise.R_kOhm);
    const double alpha0 = ohmic_alpha(cfg.qubits, cfg.squid, wp0, cfg.noise.R_kOhm);

    json spectrum = json::array();
    for (int i = 0; i < n_points; ++i) {
        const double f = 20.0 * (i + 1) / n_points;
        const double omega = 2.0 * units::pi * f;
        spectrum.push_back(
            {{"f_GHz", f},
             {"J_over_2pi_GHz", spectral_density(cfg.qubits, cfg.squid, wp, cfg.noise.R_kOhm, omega)},
             {"J_over_2pi_full_GHz",
              spectral_density(cfg.qubits, cfg.squid, wp, cfg.noise.R_kOhm, omega, 1, ResponseModel::Full)}});
    }
    json j = {
        {"command", "noise"},
        {"config_hash", config_hash(to_json(cfg))},
        {"seed", seed},
        {"R_kOhm", cfg.noise.R_kOhm},
        {"temperature_K", cfg.noise.temperature_K},
        {"decoupling_ratio", ratio},
        {"working_point", to_json(wp)},
        {"alpha", alpha},
        {"alpha_qubit2", ohmic_alpha(cfg.qubits, cfg.squid, wp, cfg.noise.R_kOhm, 2)},
        {"alpha_zero_bias", alpha0},
        {"dephasing_time_ns", dephasing_estimate(alpha, cfg.noise.temperature_K)},
        {"spectral_density", spectrum},
    };
    return j.dump(2) + "\n";
}

SynthesisConfig synthesis_config_for(const DeviceConfig& cfg, const SynthesizeOptions& opt)
{
    SynthesisConfig s = make_synthesis_config(cfg.qubits, cfg.squid, cfg.Phi_s, cfg.Ib_on_ratio);
    s.bias_shift_sign = cfg.bias_shift_sign;
    s.kappa_mw = cfg.kappa_mw;
    s.edge_width_ns = cfg.edge_width_ns;
    s.drive_ramp_ns = cfg.drive_ramp_ns;
    s.nominal_duration_ns = cfg.nominal_duration_ns;
    s.bias_crosstalk = s.mw_crosstalk = !opt.no_crosstalk;
    s.seed = opt.seed;
    s.dt_report_ns = opt.dt_report_ns;
    s.control_is_qubit1 = opt.control_is_qubit1;
    return s;
}

json to_json(const SynthesisResult& r)
{
    return {
        {"seed", r.seed},
        {"dt_report_ns", r.dt_report_ns},
        {"control_qubit", r.control_is_qubit1 ? 1 : 2},
        {"eps1_GHz", r.qubits.eps1_GHz},
        {"eps2_GHz", r.qubits.eps2_GHz},
        {"stage1",
         {{"K_on_GHz", r.schedule.coupler.K_on_GHz},
          {"t_K_ns", r.schedule.coupler.t_off - r.schedule.coupler.t_on},
          {"weyl_distance", r.stage1_weyl_distance},
          {"evaluations", r.stage1_evaluations}}},
        {"stage2",
         {{"deviation", r.stage2_deviation},
          {"evaluations", r.stage2_evaluations},
          {"segments", {segment_json(r.segments[0]), segment_json(r.segments[1])}}}},
        {"schedule", to_json(r.schedule)},
        {"report", to_json(r.report)},
    };
}

SynthesizeOutput cmd_synthesize(const DeviceConfig& cfg, const SynthesizeOptions& opt)
{
    if (!(opt.trace_dt_ns > 0.0)) throw InvalidArgument("trace sampling step must be positive");
    SynthesizeOutput out;
    out.result = synthesize_cnot(synthesis_config_for(cfg, opt));

    json j = {{"command", "synthesize"},
              {"config_hash", config_hash(to_json(cfg))},
              {"no_crosstalk", opt.no_crosstalk},
              {"config", to_json(cfg)},
              {"result", to_json(out.result)}};
    out.json = j.dump(2) + "\n";

    std::ostringstream csv;
    csv << provenance("synthesize", cfg, opt.seed);
    csv << "t_ns,eps1_GHz,eps2_GHz,K_GHz\n";
    for (const auto& row : schedule_trace(out.result.schedule, out.result.qubits, opt.trace_dt_ns))
        csv << num(row.t) << "," << num(row.eps1) << "," << num(row.eps2) << "," << num(row.K) << "\n";
    out.trace_csv = csv.str();
    return out;
}

std::string error_json(const std::exception& e)
{
    const auto* err = dynamic_cast<const Error*>(&e);
    json j = {{"error", {{"kind", err ? err->kind() : "InternalError"}, {"message", e.what()}}}};
    return j.dump() + "\n";
}

}  // namespace squidcouple
