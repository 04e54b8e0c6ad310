#pragma once

#include <numbers>

/// CODATA 2018 values (SI). The only place physical constants live.
namespace felphase::constants {

inline constexpr double speed_of_light = 299792458.0;            // m/s, exact
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double elementary_charge = 1.602176634e-19;     // C, exact
inline constexpr double electron_mass = 9.1093837015e-31;        // kg
inline constexpr double fine_structure = 7.2973525693e-3;        // dimensionless

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

} // namespace felphase::constants
