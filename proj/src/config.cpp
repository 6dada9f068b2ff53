// config.cpp

#include "squidcouple/config.hpp"

#include <cstdio>
#include <fstream>

#include "squidcouple/errors.hpp"

namespace squidcouple {

namespace {

double number(const json& obj, const std::string& section, const std::string& key)
{
    if (!obj.is_object() || !obj.contains(key))
        throw ConfigError("missing field '" + section + "." + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("field '" + section + "." + key + "' must be a number");
    return v.get<double>();
}

const json& section(const json& j, const std::string& name)
{
    if (!j.is_object() || !j.contains(name) || !j.at(name).is_object())
        throw ConfigError("missing section '" + name + "'");
    return j.at(name);
}

}  // namespace

DeviceConfig parse_device_config(const json& j)
{
    DeviceConfig c;
    const json& sq = section(j, "squid");
    c.squid.L_pH = number(sq, "squid", "L_pH");
    c.squid.C_fF = number(sq, "squid", "C_fF");
    c.squid.I0_uA = number(sq, "squid", "I0_uA");

    const json& q = section(j, "qubits");
    c.qubits.Iq1_uA = number(q, "qubits", "Iq1_uA");
    c.qubits.Iq2_uA = number(q, "qubits", "Iq2_uA");
    c.qubits.delta1_GHz = number(q, "qubits", "delta1_GHz");
    c.qubits.delta2_GHz = number(q, "qubits", "delta2_GHz");
    c.qubits.eps1_GHz = number(q, "qubits", "eps1_GHz");
    c.qubits.eps2_GHz = number(q, "qubits", "eps2_GHz");
    c.qubits.Mqs_pH = number(q, "qubits", "Mqs_pH");
    c.qubits.Mqq_pH = number(q, "qubits", "Mqq_pH");

    const json& n = section(j, "noise");
    c.noise.R_kOhm = number(n, "noise", "R_kOhm");
    c.noise.temperature_K = number(n, "noise", "temperature_K");

    const json& op = section(j, "operating_point");
    c.Phi_s = number(op, "operating_point", "Phi_s_Phi0");
    c.Ib_on_ratio = number(op, "operating_point", "Ib_on_ratio");

    const json& x = section(j, "crosstalk");
    c.bias_shift_sign = static_cast<int>(number(x, "crosstalk", "bias_shift_sign"));
    c.kappa_mw = number(x, "crosstalk", "kappa_mw_per_GHz");

    const json& p = section(j, "pulse");
    c.edge_width_ns = number(p, "pulse", "edge_width_ns");
    c.drive_ramp_ns = number(p, "pulse", "drive_ramp_ns");
    c.nominal_duration_ns = number(p, "pulse", "nominal_duration_ns");

    try {
        c.squid.validate();
        c.qubits.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (!(c.noise.R_kOhm > 0.0) || !(c.noise.temperature_K > 0.0))
        throw ConfigError("noise: R_kOhm and temperature_K must be positive");
    if (c.bias_shift_sign != 1 && c.bias_shift_sign != -1)
        throw ConfigError("crosstalk.bias_shift_sign must be +1 or -1");
    if (!(c.edge_width_ns > 0.0) || !(c.drive_ramp_ns >= 0.0) || !(c.nominal_duration_ns > 0.0))
        throw ConfigError("pulse: widths and durations must be positive");
    if (!(c.Ib_on_ratio >= 0.0 && c.Ib_on_ratio < 1.0))
        throw ConfigError("operating_point.Ib_on_ratio must lie in [0, 1)");
    return c;
}

DeviceConfig load_device_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_device_config(j);
}

json to_json(const DeviceConfig& c)
{
    return {
        {"squid", {{"L_pH", c.squid.L_pH}, {"C_fF", c.squid.C_fF}, {"I0_uA", c.squid.I0_uA}}},
        {"qubits",
         {{"Iq1_uA", c.qubits.Iq1_uA},
          {"Iq2_uA", c.qubits.Iq2_uA},
          {"delta1_GHz", c.qubits.delta1_GHz},
          {"delta2_GHz", c.qubits.delta2_GHz},
          {"eps1_GHz", c.qubits.eps1_GHz},
          {"eps2_GHz", c.qubits.eps2_GHz},
          {"Mqs_pH", c.qubits.Mqs_pH},
          {"Mqq_pH", c.qubits.Mqq_pH}}},
        {"noise", {{"R_kOhm", c.noise.R_kOhm}, {"temperature_K", c.noise.temperature_K}}},
        {"operating_point", {{"Phi_s_Phi0", c.Phi_s}, {"Ib_on_ratio", c.Ib_on_ratio}}},
        {"crosstalk", {{"bias_shift_sign", c.bias_shift_sign}, {"kappa_mw_per_GHz", c.kappa_mw}}},
        {"pulse",
         {{"edge_width_ns", c.edge_width_ns},
          {"drive_ramp_ns", c.drive_ramp_ns},
          {"nominal_duration_ns", c.nominal_duration_ns}}},
    };
}

json to_json(const PulseSchedule& s)
{
    json drives = json::array();
    for (const auto& windows : s.drives) {
        json arr = json::array();
        for (const auto& w : windows)
            arr.push_back({{"t_start_ns", w.t_start},
                           {"t_end_ns", w.t_end},
                           {"amplitude_GHz", w.amplitude_GHz},
                           {"frequency_GHz", w.frequency_GHz},
                           {"phase_rad", w.phase},
                           {"ramp_ns", w.ramp}});
        drives.push_back(std::move(arr));
    }
    return {
        {"coupler",
         {{"t_on_ns", s.coupler.t_on},
          {"t_off_ns", s.coupler.t_off},
          {"K_on_GHz", s.coupler.K_on_GHz},
          {"K_off_GHz", s.coupler.K_off_GHz},
          {"edge_width_ns", s.coupler.edge_width}}},
        {"drives", std::move(drives)},
        {"crosstalk",
         {{"chi_bias", s.crosstalk.chi_bias},
          {"sign", s.crosstalk.sign},
          {"kappa_mw_per_GHz", s.crosstalk.kappa_mw}}},
        {"total_duration_ns", s.total_duration},
    };
}

PulseSchedule parse_schedule(const json& j)
{
    PulseSchedule s;
    const json& c = section(j, "coupler");
    s.coupler.t_on = number(c, "coupler", "t_on_ns");
    s.coupler.t_off = number(c, "coupler", "t_off_ns");
    s.coupler.K_on_GHz = number(c, "coupler", "K_on_GHz");
    s.coupler.K_off_GHz = number(c, "coupler", "K_off_GHz");
    s.coupler.edge_width = number(c, "coupler", "edge_width_ns");
    if (!j.contains("drives") || !j.at("drives").is_array() || j.at("drives").size() != 2)
        throw ConfigError("schedule field 'drives' must be an array of two window lists");
    for (int q = 0; q < 2; ++q) {
        for (const json& w : j.at("drives").at(q)) {
            DriveWindow d;
            d.t_start = number(w, "drives", "t_start_ns");
            d.t_end = number(w, "drives", "t_end_ns");
            d.amplitude_GHz = number(w, "drives", "amplitude_GHz");
            d.frequency_GHz = number(w, "drives", "frequency_GHz");
            d.phase = number(w, "drives", "phase_rad");
            d.ramp = number(w, "drives", "ramp_ns");
            s.drives[q].push_back(d);
        }
    }
    const json& x = section(j, "crosstalk");
    s.crosstalk.chi_bias = number(x, "crosstalk", "chi_bias");
    s.crosstalk.sign = static_cast<int>(number(x, "crosstalk", "sign"));
    s.crosstalk.kappa_mw = number(x, "crosstalk", "kappa_mw_per_GHz");
    s.total_duration = number(j, "schedule", "total_duration_ns");
    try {
        s.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return s;
}

json to_json(const WorkingPoint& wp)
{
    return {{"gamma_bar_rad", wp.gamma_bar}, {"delta_gamma_rad", wp.delta_gamma}, {"J_uA", wp.J_uA},
            {"Ib_uA", wp.Ib_uA},             {"Phi_s_Phi0", wp.Phi_s}};
}

json matrix_to_json(const Unitary4& U)
{
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int k = 0; k < 4; ++k) row.push_back({U(i, k).real(), U(i, k).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Unitary4 matrix_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 4) throw ConfigError("matrix must be 4 rows of 4 [re, im] pairs");
    Unitary4 U;
    for (int i = 0; i < 4; ++i) {
        if (!j[i].is_array() || j[i].size() != 4) throw ConfigError("matrix row must have 4 entries");
        for (int k = 0; k < 4; ++k) U(i, k) = cplx(j[i][k].at(0).get<double>(), j[i][k].at(1).get<double>());
    }
    return U;
}

json to_json(const GateReport& r)
{
    return {
        {"matrix", matrix_to_json(r.matrix)},
        {"weyl", {r.weyl.c1, r.weyl.c2, r.weyl.c3}},
        {"invariants", {{"g1", r.invariants.g1}, {"g2", r.invariants.g2}, {"g3", r.invariants.g3}}},
        {"deviation", r.deviation},
        {"weyl_distance", r.weyl_distance},
        {"unitarity_defect", r.unitarity_defect},
    };
}

std::string config_hash(const json& j)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace squidcouple
