#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

// Gaussian <-> SI conversion at the I/O boundary.
//
// One pinned factor F per dimension: Gaussian -> SI is x*F, SI -> Gaussian is
// x/F with the very same F. Reciprocals are never stored, so a value carried
// across the boundary and back sees exactly one multiply and one divide by
// the identical constant.

namespace mevac::units {

enum class Dim {
  length,
  area,
  volume,
  speed,
  flow_rate,
  stress,
  force_density,
  energy,
  power,
  viscosity,
  torque,
  pivot_friction,
  momentum_density,
  e_field,
  b_field,
  angular_velocity,
};

struct UnitPair {
  Dim dim;
  std::string_view gaussian;
  std::string_view si;
  double factor;  // value_si = value_gaussian * factor
};

// clang-format off
inline constexpr std::array<UnitPair, 16> unit_table{{
    {Dim::length,           "cm",          "m",           0.01},
    {Dim::area,             "cm2",         "m2",          1e-4},
    {Dim::volume,           "cm3",         "m3",          1e-6},
    {Dim::speed,            "cm/s",        "m/s",         0.01},
    {Dim::flow_rate,        "cm3/s",       "m3/s",        1e-6},
    {Dim::stress,           "dyn/cm2",     "Pa",          0.1},
    {Dim::force_density,    "dyn/cm3",     "N/m3",        10.0},
    {Dim::energy,           "erg",         "J",           1e-7},
    {Dim::power,            "erg/s",       "W",           1e-7},
    {Dim::viscosity,        "poise",       "Pa.s",        0.1},
    {Dim::torque,           "dyn.cm",      "N.m",         1e-7},
    {Dim::pivot_friction,   "dyn.cm.s",    "N.m.s",       1e-7},
    {Dim::momentum_density, "g/(cm2.s)",   "kg/(m2.s)",   10.0},
    {Dim::e_field,          "statvolt/cm", "V/m",         2.99792458e4},
    {Dim::b_field,          "gauss",       "T",           1e-4},
    {Dim::angular_velocity, "rad/s",       "rad/s",       1.0},
}};
// clang-format on

struct UnitRef {
  const UnitPair* pair;
  bool is_si;
};

inline UnitRef lookup(std::string_view name) {
  for (const auto& p : unit_table) {
    if (name == p.gaussian) return {&p, false};
  }
  for (const auto& p : unit_table) {
    if (name == p.si) return {&p, true};
  }
  throw std::invalid_argument("unknown unit: " + std::string(name));
}

// Exact pinned-factor conversion. Identical unit names return the value
// untouched; mismatched dimensions are an error, not a silent pass-through.
inline double convert_units(double value, std::string_view from,
                            std::string_view to) {
  const UnitRef f = lookup(from);
  const UnitRef t = lookup(to);
  if (f.pair->dim != t.pair->dim) {
    throw std::invalid_argument("dimension mismatch: cannot convert " +
                                std::string(from) + " to " + std::string(to));
  }
  if (f.is_si == t.is_si) return value;
  return f.is_si ? value / f.pair->factor : value * f.pair->factor;
}

enum class System { gaussian, si };

inline const UnitPair& pair_for(Dim d) {
  for (const auto& p : unit_table) {
    if (p.dim == d) return p;
  }
  throw std::logic_error("unit_table misses a dimension");
}

inline std::string_view unit_name(Dim d, System s) {
  const UnitPair& p = pair_for(d);
  return s == System::si ? p.si : p.gaussian;
}

// Internal Gaussian value -> value in the requested output system.
inline double to_system(double gaussian_value, Dim d, System s) {
  if (s == System::gaussian) return gaussian_value;
  return gaussian_value * pair_for(d).factor;
}

// Input value in system s -> internal Gaussian value.
inline double from_system(double value, Dim d, System s) {
  if (s == System::gaussian) return value;
  return value / pair_for(d).factor;
}

}  // namespace mevac::units
