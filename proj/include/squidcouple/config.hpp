// config.hpp: Device configuration and JSON (de)serialization

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "squidcouple/coupler.hpp"
#include "squidcouple/dynamics.hpp"
#include "squidcouple/gates.hpp"
#include "squidcouple/noise.hpp"
#include "squidcouple/squid.hpp"

namespace squidcouple {

using json = nlohmann::json;

struct DeviceConfig {
    SquidParams squid;
    QubitPair qubits;
    NoiseSpec noise;
    double Phi_s{0.45};            // coupler flux operating point, Phi0 units
    double Ib_on_ratio{0.0};       // coupler bias (fraction of Ic) while coupling
    int bias_shift_sign{+1};       // see Crosstalk::sign
    double kappa_mw{0.014};        // K modulation per GHz of summed drive
    double edge_width_ns{0.5};     // coupler 10%-90% rise
    double drive_ramp_ns{0.5};
    double nominal_duration_ns{29.35};  // sizing target for the full CNOT sequence
};

/// Parses and validates; throws ConfigError naming the first missing or
/// malformed field.
DeviceConfig parse_device_config(const json& j);
DeviceConfig load_device_config(const std::string& path);
json to_json(const DeviceConfig& cfg);

json to_json(const PulseSchedule& s);
PulseSchedule parse_schedule(const json& j);

json to_json(const WorkingPoint& wp);
json to_json(const GateReport& r);
json matrix_to_json(const Unitary4& U);
Unitary4 matrix_from_json(const json& j);

/// Stable 64-bit FNV-1a hash of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const json& j);

}  // namespace squidcouple
