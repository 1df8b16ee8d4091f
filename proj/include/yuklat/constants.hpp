#pragma once

namespace yuklat {

// Fundamental constants, SI (CODATA 2018). Kept in one record so every
// computation can be rerun against an alternative set when probing the
// sensitivity of derived quantities to the chosen values.
struct PhysicalConstants {
    double gravitational_constant = 6.67430e-11;  // m^3 kg^-1 s^-2
    double hbar = 1.054571817e-34;                // J s
    double speed_of_light = 2.99792458e8;         // m / s
    double elementary_charge = 1.602176634e-19;   // C, exact; eV rendering only
};

inline constexpr PhysicalConstants kConstants{};

// Unit multipliers for the nm / pN boundary. The core works in SI only;
// these appear exactly once per conversion, at the edges.
namespace units {
inline constexpr double nm = 1e-9;   // m
inline constexpr double um = 1e-6;   // m
inline constexpr double pN = 1e-12;  // N
}  // namespace units

}  // namespace yuklat
