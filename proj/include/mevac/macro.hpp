#pragma once

#include <stdexcept>
#include <string>

#include "mevac/constants.hpp"
#include "mevac/material.hpp"
#include "mevac/quantity.hpp"
#include "mevac/vacuum.hpp"

// Macroscopic observables for a hypothetical driving stress T0: the Poiseuille
// maximum-speed estimate, the dissipated power, the radiometer lever-arm
// model, and the transient impulse for a susceptibility ramp.

namespace mevac::macro {

struct FlowResult {
  Speed U_vac;
  FlowRate Phi;  // = pi a^2 U / 2
  Power P;       // = T0 * Phi
  Stress T0;     // provenance: the stress this flow was computed from
};

// U = T0 a^2 / (4 eta L), the maximum speed of the developed profile.
inline Speed poiseuille_speed(Stress T0, Length a, Length L, Viscosity eta) {
  if (!(a.value() > 0.0) || !(L.value() > 0.0) || !(eta.value() > 0.0)) {
    throw std::invalid_argument("poiseuille_speed: a, L, eta must be > 0");
  }
  return T0 * a * a / (4.0 * eta * L);
}

inline FlowRate flow_rate(Length a, Speed U) {
  if (!(a.value() > 0.0)) {
    throw std::invalid_argument("flow_rate: a must be > 0");
  }
  return pi * a * a * U / 2.0;
}

inline Power dissipated_power(Stress T0, FlowRate Phi) { return T0 * Phi; }

inline FlowResult compute_flow(Stress T0, Length a, Length L, Viscosity eta) {
  const Speed U = poiseuille_speed(T0, a, L, eta);
  const FlowRate Phi = flow_rate(a, U);
  return {U, Phi, dissipated_power(T0, Phi), T0};
}

struct RadiometerResult {
  Torque torque;              // = T0 * vane_area * arm
  AngularVelocity omega_vac;  // steady balance torque / gamma
  Power dissipation;          // = gamma * omega_vac^2
};

// Minimal lever-arm model: the vane sees the full stress at one arm length.
inline RadiometerResult radiometer_spin(Stress T0, Area vane_area, Length arm,
                                        PivotFriction gamma) {
  if (!(vane_area.value() > 0.0) || !(arm.value() > 0.0) ||
      !(gamma.value() > 0.0)) {
    throw std::invalid_argument(
        "radiometer_spin: vane_area, arm, gamma must be > 0");
  }
  const Torque tau = T0 * vane_area * arm;
  const AngularVelocity w = tau / gamma;
  return {tau, w, gamma * w * w};
}

struct TransientResult {
  MomentumDensity impulse_density;
  std::string ramp_energy_note;
};

inline constexpr const char* ramp_energy_note_text =
    "the impulse is delivered while chi ramps; the ramping external fields "
    "supply the corresponding energy, and that budget is not computed here";

// Impulse density for a chi ramp, rescaled linearly from the reference
// vacuum result: (delta_chi_final - delta_chi_initial)/delta_chi_ref * g0.
// A 0 -> working ramp therefore delivers exactly g0 = T0/c.
inline TransientResult transient_impulse(
    const vacuum::VacuumStressResult& vac,
    const material::MESusceptibility& chi_initial,
    const material::MESusceptibility& chi_final) {
  const double ramp =
      material::delta_chi(chi_final) - material::delta_chi(chi_initial);
  if (vac.delta_chi == 0.0) {
    if (ramp == 0.0) {
      return {MomentumDensity(0.0), ramp_energy_note_text};
    }
    throw std::invalid_argument(
        "transient_impulse: reference vacuum result has delta_chi = 0 and "
        "cannot be rescaled to a nonzero ramp");
  }
  return {MomentumDensity(ramp / vac.delta_chi * vac.g0.value()),
          ramp_energy_note_text};
}

}  // namespace mevac::macro
