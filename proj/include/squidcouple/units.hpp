// units.hpp: Physical constants and the project-wide unit system
//
// Currents are in µA, inductances in pH, flux in units of the flux quantum,
// energies as frequencies E/h in GHz and times in ns. Every conversion to SI
// goes through this header.

#pragma once

#include <numbers>

namespace squidcouple::units {

inline constexpr double pi = std::numbers::pi;

// CODATA 2018 exact values.
inline constexpr double planck = 6.62607015e-34;           // J s
inline constexpr double hbar = planck / (2.0 * pi);        // J s
inline constexpr double elementary_charge = 1.602176634e-19;
inline constexpr double boltzmann = 1.380649e-23;          // J/K
inline constexpr double flux_quantum = planck / (2.0 * elementary_charge);  // Wb

inline constexpr double microamp = 1e-6;
inline constexpr double picohenry = 1e-12;
inline constexpr double femtofarad = 1e-15;
inline constexpr double kiloohm = 1e3;
inline constexpr double gigahertz = 1e9;
inline constexpr double nanosecond = 1e-9;

// Energy in joules expressed as E/h in GHz.
constexpr double joule_to_ghz(double energy) { return energy / planck / gigahertz; }

}  // namespace squidcouple::units
