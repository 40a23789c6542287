#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mevac/quantity.hpp"

// Magnetoelectric material model: the antisymmetric-capable susceptibility
// pair (chi_xy, chi_yx), the scalar permittivity/permeability, and the four
// birefringent refractive indices of the counter-propagating mode set.

namespace mevac::material {

// Only the xy and yx entries of the 3x3 magnetoelectric tensor are nonzero.
// The full tensor is materialized on demand; storage is the two scalars.
struct MESusceptibility {
  double chi_xy = 0.0;
  double chi_yx = 0.0;

  [[nodiscard]] std::array<std::array<double, 3>, 3> tensor() const {
    return {{{0.0, chi_xy, 0.0}, {chi_yx, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
  }
};

inline double delta_chi(const MESusceptibility& s) {
  return s.chi_xy - s.chi_yx;
}

// The dispersion relations are first order in chi; beyond this threshold the
// linearization is dubious. A warning, not an error: the model still runs.
inline constexpr double chi_warning_threshold = 0.1;

inline std::vector<std::string> susceptibility_warnings(
    const MESusceptibility& s, double threshold = chi_warning_threshold) {
  std::vector<std::string> w;
  if (std::abs(s.chi_xy) >= threshold || std::abs(s.chi_yx) >= threshold) {
    w.push_back(
        "susceptibility magnitude is at or above " +
        std::to_string(threshold) +
        "; the first-order-in-chi dispersion relations are dubious here");
  }
  return w;
}

class MaterialParams {
 public:
  MaterialParams(double epsilon, double mu, MESusceptibility chi,
                 Viscosity viscosity)
      : epsilon_(epsilon), mu_(mu), chi_(chi), viscosity_(viscosity) {
    if (!(epsilon >= 1.0)) {
      throw std::invalid_argument("material: epsilon must be >= 1");
    }
    if (!(mu > 0.0)) {
      throw std::invalid_argument("material: mu must be > 0");
    }
    if (!(viscosity.value() > 0.0)) {
      throw std::invalid_argument("material: viscosity must be > 0");
    }
  }

  [[nodiscard]] double epsilon() const { return epsilon_; }
  [[nodiscard]] double mu() const { return mu_; }
  [[nodiscard]] const MESusceptibility& susceptibility() const { return chi_; }
  [[nodiscard]] Viscosity viscosity() const { return viscosity_; }

  // n0 is recomputed from epsilon*mu every time, never stored.
  [[nodiscard]] double n0() const {
    const double em = epsilon_ * mu_;
    if (!(em > 0.0)) {
      throw std::domain_error("material: epsilon*mu must be positive");
    }
    return std::sqrt(em);
  }

  [[nodiscard]] std::vector<std::string> linearization_warnings() const {
    return susceptibility_warnings(chi_);
  }

  [[nodiscard]] MaterialParams with_susceptibility(MESusceptibility s) const {
    return {epsilon_, mu_, s, viscosity_};
  }

 private:
  double epsilon_;
  double mu_;
  MESusceptibility chi_;
  Viscosity viscosity_;
};

enum class Direction { plus_z, minus_z };
enum class Polarization { pol1 = 1, pol2 = 2 };

// n(+,1) = +n0 + chi_xy    n(-,1) = -n0 + chi_xy
// n(+,2) = +n0 - chi_yx    n(-,2) = -n0 - chi_yx
// The anisotropy sits entirely in the mean of counter-propagating indices.
inline double refractive_index(const MaterialParams& m, Direction d,
                               Polarization p) {
  const double n0 = m.n0();
  const double base = (d == Direction::plus_z) ? n0 : -n0;
  const double shift = (p == Polarization::pol1) ? m.susceptibility().chi_xy
                                                 : -m.susceptibility().chi_yx;
  return base + shift;
}

// Linear induction model chi_xy = -chi_yx = alpha*E*B. The coupling constant
// alpha is a free input in 1/(statvolt*gauss); no coupling law is derived
// here.
using MECoupling = Qty<-2, 2, 4>;

inline MESusceptibility induced_susceptibility(MECoupling alpha, EField E,
                                               BField B) {
  if (!std::isfinite(alpha.value()) || !std::isfinite(E.value()) ||
      !std::isfinite(B.value())) {
    throw std::invalid_argument(
        "induced_susceptibility: alpha, E, B must be finite");
  }
  const double chi = alpha * E * B;
  return {chi, -chi};
}

}  // namespace mevac::material
