#pragma once

// Pinned physical constants, Gaussian units. Everything internal to the
// library is Gaussian; SI appears only at the I/O boundary (units.hpp).

namespace mevac {

inline constexpr double pi = 3.14159265358979323846;

// Speed of light in vacuum, cm/s. Exact by definition of the meter.
inline constexpr double c_light = 2.99792458e10;

// Reduced Planck constant, erg*s. Exact by the 2019 SI redefinition.
inline constexpr double hbar = 1.054571817e-27;

}  // namespace mevac
