// cli.hpp: Curve and report commands behind the squidcouple executable
//
// Each command is a pure function of (config, options) returning the bytes
// that the executable writes out, so repeated runs are byte-identical.

#pragma once

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include "squidcouple/cnot.hpp"
#include "squidcouple/config.hpp"

namespace squidcouple {

/// J(Phi_s) at each Ib = ratio * Ic(Phi_s operating point), plus Ic(Phi_s),
/// on n_points fluxes in [phi_min, phi_max]. Failed points carry the error
/// kind in place of a number.
std::string cmd_squid_curves(const DeviceConfig& cfg, const std::vector<double>& ib_ratios, int n_points,
                             std::uint64_t seed, double phi_min = 0.0, double phi_max = 0.5);

/// K, K0 and Ks versus Ib / Ic(Phi_s).
std::string cmd_coupling_sweep(const DeviceConfig& cfg, int n_points, std::uint64_t seed);

/// Ks at 0.85 Ic versus beta_L (L fixed, I0 varied).
std::string cmd_beta_sweep(const DeviceConfig& cfg, int n_points, std::uint64_t seed, double beta_min = 0.01,
                           double beta_max = 0.5, double bias_ratio = 0.85);

/// alpha and the dephasing estimate at the decoupling bias, alpha at zero
/// bias, and J(w)/2pi on n_points frequencies up to 20 GHz.
std::string cmd_noise(const DeviceConfig& cfg, int n_points, std::uint64_t seed);

struct SynthesizeOptions {
    std::uint64_t seed{1};
    bool no_crosstalk{false};
    double dt_report_ns{5e-4};
    double trace_dt_ns{0.01};
    bool control_is_qubit1{true};
};

struct SynthesizeOutput {
    std::string json;
    std::string trace_csv;
    SynthesisResult result;
};

SynthesisConfig synthesis_config_for(const DeviceConfig& cfg, const SynthesizeOptions& opt);
SynthesizeOutput cmd_synthesize(const DeviceConfig& cfg, const SynthesizeOptions& opt);

json to_json(const SynthesisResult& r);

/// {"error": {"kind": ..., "message": ...}} for stderr.
std::string error_json(const std::exception& e);

}  // namespace squidcouple
