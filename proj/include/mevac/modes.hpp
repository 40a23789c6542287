#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mevac/constants.hpp"
#include "mevac/material.hpp"
#include "mevac/quantity.hpp"
#include "mevac/vec3.hpp"

// Plane-wave modes in the magnetoelectric medium, their momentum density and
// axial Maxwell stress, and the time-averaging quadrature that backs every
// closed form in this module.
//
// Closed forms are first order in chi and are the reference implementation.
// The quadrature path keeps the full nonlinear expressions and serves as the
// oracle, so the size of the first-order approximation error stays visible.

namespace mevac::modes {

using material::Direction;
using material::MaterialParams;
using material::MESusceptibility;
using material::Polarization;

struct PlaneWaveMode {
  double omega;  // rad/s
  Direction direction;
  Polarization polarization;
  double E0k;  // statvolt/cm

  PlaneWaveMode(double omega_, Direction d, Polarization p, double E0k_)
      : omega(omega_), direction(d), polarization(p), E0k(E0k_) {
    if (!(omega > 0.0)) {
      throw std::invalid_argument("mode: omega must be > 0");
    }
    if (!(E0k >= 0.0)) {
      throw std::invalid_argument("mode: E0k must be >= 0");
    }
  }
};

// Instantaneous fields at one (z, t). E in statvolt/cm, B in gauss.
struct FieldSnapshot {
  Vec3 E;
  Vec3 B;
  double z = 0.0;
  double t = 0.0;
};

// Wavenumber k = n*omega/c is derived on demand, never stored.
inline double wavenumber(const PlaneWaveMode& mode, const MaterialParams& m) {
  const double n = material::refractive_index(m, mode.direction,
                                              mode.polarization);
  return n * mode.omega / c_light;
}

// Polarization 1: E along e1, B = n E0 cos(phi) e2.
// Polarization 2: E along e2, B = -n E0 cos(phi) e1.
// Phase convention phi = k z - omega t.
inline FieldSnapshot mode_fields(const PlaneWaveMode& mode,
                                 const MaterialParams& m, double z, double t) {
  const double n = material::refractive_index(m, mode.direction,
                                              mode.polarization);
  const double phase = n * mode.omega / c_light * z - mode.omega * t;
  const double a = mode.E0k * std::cos(phase);
  FieldSnapshot s;
  s.z = z;
  s.t = t;
  if (mode.polarization == Polarization::pol1) {
    s.E = {a, 0.0, 0.0};
    s.B = {0.0, n * a, 0.0};
  } else {
    s.E = {0.0, a, 0.0};
    s.B = {-n * a, 0.0, 0.0};
  }
  return s;
}

// Analytic d/dt of mode_fields; feeds the dg/dt quadrature oracle.
inline FieldSnapshot mode_fields_dt(const PlaneWaveMode& mode,
                                    const MaterialParams& m, double z,
                                    double t) {
  const double n = material::refractive_index(m, mode.direction,
                                              mode.polarization);
  const double phase = n * mode.omega / c_light * z - mode.omega * t;
  const double a = mode.E0k * mode.omega * std::sin(phase);
  FieldSnapshot s;
  s.z = z;
  s.t = t;
  if (mode.polarization == Polarization::pol1) {
    s.E = {a, 0.0, 0.0};
    s.B = {0.0, n * a, 0.0};
  } else {
    s.E = {0.0, a, 0.0};
    s.B = {-n * a, 0.0, 0.0};
  }
  return s;
}

inline Vec3 chi_apply(const MESusceptibility& chi, const Vec3& v) {
  return {chi.chi_xy * v.y, chi.chi_yx * v.x, 0.0};
}

inline Vec3 chi_apply_transpose(const MESusceptibility& chi, const Vec3& v) {
  return {chi.chi_yx * v.y, chi.chi_xy * v.x, 0.0};
}

// g = (1/4 pi c) [ (eps - 1/mu) E x B + (1/mu) E x (chi^T E)
//                  + (1/mu) (chi B) x B ]
inline Vec3 momentum_density(const FieldSnapshot& snap,
                             const MaterialParams& m) {
  const MESusceptibility& chi = m.susceptibility();
  const double inv_mu = 1.0 / m.mu();
  const Vec3 term1 = (m.epsilon() - inv_mu) * cross(snap.E, snap.B);
  const Vec3 term2 = inv_mu * cross(snap.E, chi_apply_transpose(chi, snap.E));
  const Vec3 term3 = inv_mu * cross(chi_apply(chi, snap.B), snap.B);
  return (1.0 / (4.0 * pi * c_light)) * (term1 + term2 + term3);
}

// Product rule on the expression above, with (Edot, Bdot) analytic.
inline Vec3 momentum_density_dt(const FieldSnapshot& snap,
                                const FieldSnapshot& snap_dt,
                                const MaterialParams& m) {
  const MESusceptibility& chi = m.susceptibility();
  const double inv_mu = 1.0 / m.mu();
  const Vec3& E = snap.E;
  const Vec3& B = snap.B;
  const Vec3& Ed = snap_dt.E;
  const Vec3& Bd = snap_dt.B;
  const Vec3 term1 =
      (m.epsilon() - inv_mu) * (cross(Ed, B) + cross(E, Bd));
  const Vec3 term2 = inv_mu * (cross(Ed, chi_apply_transpose(chi, E)) +
                               cross(E, chi_apply_transpose(chi, Ed)));
  const Vec3 term3 = inv_mu * (cross(chi_apply(chi, Bd), B) +
                               cross(chi_apply(chi, B), Bd));
  return (1.0 / (4.0 * pi * c_light)) * (term1 + term2 + term3);
}

// Axial stress T^zz built from (1/2) eps E^2 - (1/(2 mu)) B^2, normalized by
// -n0/(4 pi). This normalization makes the net mode stress land exactly on
// delta_chi * eps * E0k^2 / (4 pi) for every material: the chi^2 pieces
// cancel between counter-propagating partners, so the identity is exact, not
// first order. For an isotropic plane wave the bracket vanishes (n0^2 =
// eps*mu) and the stress is zero.
inline double stress_zz(const FieldSnapshot& snap, const MaterialParams& m) {
  const double bracket =
      0.5 * m.epsilon() * norm2(snap.E) - 0.5 / m.mu() * norm2(snap.B);
  return -m.n0() / (4.0 * pi) * bracket;
}

inline constexpr std::size_t default_quadrature_points = 1024;
inline constexpr std::size_t min_quadrature_points = 16;

namespace detail {

// Fixed-shape pairwise reduction: deterministic regardless of how callers
// might batch sample generation, and exact for constant samples when the
// count is a power of two.
inline double pairwise_sum(const double* data, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return data[0];
  if (n == 2) return data[0] + data[1];
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

}  // namespace detail

// Composite midpoint average of f over [0, period). The integrands here are
// trigonometric polynomials, for which the midpoint rule is spectrally
// accurate: it integrates every harmonic below the sample count exactly, so
// the rule converges faster than any power of 1/n on these inputs.
template <class F>
double time_average(F&& f, double period, std::size_t n_points) {
  if (!(period > 0.0)) {
    throw std::invalid_argument("time_average: period must be > 0");
  }
  if (n_points < min_quadrature_points) {
    throw std::invalid_argument("time_average: n_points must be >= 16");
  }
  std::vector<double> samples(n_points);
  const double h = period / static_cast<double>(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * h;
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw std::domain_error("time_average: non-finite sample at t = " +
                              std::to_string(t));
    }
    samples[i] = v;
  }
  return detail::pairwise_sum(samples.data(), n_points) /
         static_cast<double>(n_points);
}

struct TimeAverageResult {
  double value;            // refined estimate (2 n_points samples)
  double richardson_delta; // |estimate(2n) - estimate(n)|
};

// Richardson-style consistency check: re-average at twice the sample count
// and report the shift. For the smooth periodic integrands used here the
// shift is rounding-level; anything larger flags a misuse of the rule.
template <class F>
TimeAverageResult time_average_with_check(F&& f, double period,
                                          std::size_t n_points) {
  const double coarse = time_average(f, period, n_points);
  const double fine = time_average(f, period, 2 * n_points);
  return {fine, std::abs(fine - coarse)};
}

// The counter-propagating quartet sharing one |k|: both directions, both
// polarizations. This set spans two wavevectors (+k and -k).
inline std::array<PlaneWaveMode, 4> mode_quartet(double omega, double E0k) {
  return {PlaneWaveMode(omega, Direction::plus_z, Polarization::pol1, E0k),
          PlaneWaveMode(omega, Direction::minus_z, Polarization::pol1, E0k),
          PlaneWaveMode(omega, Direction::plus_z, Polarization::pol2, E0k),
          PlaneWaveMode(omega, Direction::minus_z, Polarization::pol2, E0k)};
}

// Net quartet stress sum_lambda (T+lambda - T-lambda), time averaged.
// Closed form; exact in chi, see stress_zz.
inline Stress net_mode_stress(double omega, double E0k,
                              const MaterialParams& m) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("net_mode_stress: omega must be > 0");
  }
  const double dchi = material::delta_chi(m.susceptibility());
  return Stress(dchi * m.epsilon() * E0k * E0k / (4.0 * pi));
}

// Quadrature path for the same quantity: per-mode time averages of the full
// nonlinear stress, combined in a fixed order.
inline Stress net_mode_stress_quadrature(
    double omega, double E0k, const MaterialParams& m, double z = 0.0,
    std::size_t n_points = default_quadrature_points) {
  const double period = 2.0 * pi / omega;
  const auto quartet = mode_quartet(omega, E0k);
  std::array<double, 4> avg{};
  for (std::size_t i = 0; i < 4; ++i) {
    const PlaneWaveMode& mode = quartet[i];
    avg[i] = time_average(
        [&](double t) { return stress_zz(mode_fields(mode, m, z, t), m); },
        period, n_points);
  }
  return Stress((avg[0] - avg[1]) + (avg[2] - avg[3]));
}

struct ModeAverages {
  MomentumDensity g_avg;   // z component, per wavevector
  ForceDensity dg_dt_avg;  // zero whenever chi is time independent
  Stress T_zz_avg;         // = c * g_avg by construction
  ForceDensity dT_dz_avg;  // zero whenever chi is time independent
};

// Time-averaged momentum density per wavevector. The quartet spans two
// wavevectors, so its direct four-mode sum is twice this value (to first
// order in chi; the quadrature oracle exposes the chi^3 remainder).
inline ModeAverages averaged_momentum_density(double omega, double E0k,
                                              const MaterialParams& m) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument(
        "averaged_momentum_density: omega must be > 0");
  }
  const double dchi = material::delta_chi(m.susceptibility());
  const double g = dchi * m.epsilon() * E0k * E0k / (4.0 * pi * c_light);
  ModeAverages out;
  out.g_avg = MomentumDensity(g);
  out.dg_dt_avg = ForceDensity(0.0);
  out.T_zz_avg = Stress(c_light * g);
  out.dT_dz_avg = ForceDensity(0.0);
  return out;
}

// Quadrature oracle: four-mode sum of time-averaged g_z. Equals
// 2 * g_avg + O(chi^3); the factor two is the per-wavevector bookkeeping.
inline MomentumDensity quartet_momentum_quadrature(
    double omega, double E0k, const MaterialParams& m, double z = 0.0,
    std::size_t n_points = default_quadrature_points) {
  const double period = 2.0 * pi / omega;
  const auto quartet = mode_quartet(omega, E0k);
  std::array<double, 4> avg{};
  for (std::size_t i = 0; i < 4; ++i) {
    const PlaneWaveMode& mode = quartet[i];
    avg[i] = time_average(
        [&](double t) {
          return momentum_density(mode_fields(mode, m, z, t), m).z;
        },
        period, n_points);
  }
  return MomentumDensity((avg[0] + avg[1]) + (avg[2] + avg[3]));
}

// Quadrature average of the analytic d g_z/dt summed pointwise over the
// quartet. Vanishes for constant chi; the return value measures how well the
// quadrature sees that.
inline ForceDensity dgdt_time_average(
    double omega, double E0k, const MaterialParams& m, double z = 0.0,
    std::size_t n_points = default_quadrature_points) {
  const double period = 2.0 * pi / omega;
  const auto quartet = mode_quartet(omega, E0k);
  const double avg = time_average(
      [&](double t) {
        double sum = 0.0;
        for (const PlaneWaveMode& mode : quartet) {
          sum += momentum_density_dt(mode_fields(mode, m, z, t),
                                     mode_fields_dt(mode, m, z, t), m)
                     .z;
        }
        return sum;
      },
      period, n_points);
  return ForceDensity(avg);
}

}  // namespace mevac::modes
