#pragma once

#include <compare>

// Dimension-tagged scalar quantities (Gaussian cgs base: mass, length, time).
//
// Exponents are stored doubled so Gaussian electromagnetic quantities, which
// carry half-integer powers of mass and length, stay integral template
// parameters: statvolt/cm is g^(1/2) cm^(-1/2) s^(-1), i.e. Qty<1,-1,-2>.
//
// Products and quotients compose exponents, so a dimensionally wrong formula
// fails to compile. None of this exists at runtime; a Qty is one double.

namespace mevac {

template <int M2, int L2, int T2>
class Qty {
 public:
  constexpr Qty() = default;
  explicit constexpr Qty(double v) : v_(v) {}

  [[nodiscard]] constexpr double value() const { return v_; }

  constexpr Qty& operator+=(Qty o) { v_ += o.v_; return *this; }
  constexpr Qty& operator-=(Qty o) { v_ -= o.v_; return *this; }
  constexpr Qty operator-() const { return Qty(-v_); }
  constexpr Qty operator+() const { return *this; }

  friend constexpr auto operator<=>(Qty, Qty) = default;

 private:
  double v_ = 0.0;
};

// Dimensionless results decay to double implicitly.
template <>
class Qty<0, 0, 0> {
 public:
  constexpr Qty() = default;
  constexpr Qty(double v) : v_(v) {}
  constexpr operator double() const { return v_; }
  [[nodiscard]] constexpr double value() const { return v_; }

 private:
  double v_ = 0.0;
};

template <int M2, int L2, int T2>
constexpr Qty<M2, L2, T2> operator+(Qty<M2, L2, T2> a, Qty<M2, L2, T2> b) {
  return Qty<M2, L2, T2>(a.value() + b.value());
}

template <int M2, int L2, int T2>
constexpr Qty<M2, L2, T2> operator-(Qty<M2, L2, T2> a, Qty<M2, L2, T2> b) {
  return Qty<M2, L2, T2>(a.value() - b.value());
}

template <int Ma, int La, int Ta, int Mb, int Lb, int Tb>
constexpr Qty<Ma + Mb, La + Lb, Ta + Tb> operator*(Qty<Ma, La, Ta> a,
                                                   Qty<Mb, Lb, Tb> b) {
  return Qty<Ma + Mb, La + Lb, Ta + Tb>(a.value() * b.value());
}

template <int Ma, int La, int Ta, int Mb, int Lb, int Tb>
constexpr Qty<Ma - Mb, La - Lb, Ta - Tb> operator/(Qty<Ma, La, Ta> a,
                                                   Qty<Mb, Lb, Tb> b) {
  return Qty<Ma - Mb, La - Lb, Ta - Tb>(a.value() / b.value());
}

template <int M2, int L2, int T2>
constexpr Qty<M2, L2, T2> operator*(double s, Qty<M2, L2, T2> q) {
  return Qty<M2, L2, T2>(s * q.value());
}

template <int M2, int L2, int T2>
constexpr Qty<M2, L2, T2> operator*(Qty<M2, L2, T2> q, double s) {
  return Qty<M2, L2, T2>(q.value() * s);
}

template <int M2, int L2, int T2>
constexpr Qty<M2, L2, T2> operator/(Qty<M2, L2, T2> q, double s) {
  return Qty<M2, L2, T2>(q.value() / s);
}

template <int M2, int L2, int T2>
constexpr Qty<-M2, -L2, -T2> operator/(double s, Qty<M2, L2, T2> q) {
  return Qty<-M2, -L2, -T2>(s / q.value());
}

using Dimensionless = Qty<0, 0, 0>;
using Length = Qty<0, 2, 0>;           // cm
using Area = Qty<0, 4, 0>;             // cm^2
using Volume = Qty<0, 6, 0>;           // cm^3
using Duration = Qty<0, 0, 2>;         // s
using Speed = Qty<0, 2, -2>;           // cm/s
using AngularVelocity = Qty<0, 0, -2>; // rad/s
using FlowRate = Qty<0, 6, -2>;        // cm^3/s
using Stress = Qty<2, -2, -4>;         // dyn/cm^2 (= erg/cm^3)
using ForceDensity = Qty<2, -4, -4>;   // dyn/cm^3
using Energy = Qty<2, 4, -4>;          // erg
using Torque = Qty<2, 4, -4>;          // dyn*cm
using Power = Qty<2, 4, -6>;           // erg/s
using Viscosity = Qty<2, -2, -2>;      // poise
using MomentumDensity = Qty<2, -4, -2>; // g/(cm^2 s)
using PivotFriction = Qty<2, 4, -2>;   // dyn*cm*s
using Action = Qty<2, 4, -2>;          // erg*s
using EField = Qty<1, -1, -2>;         // statvolt/cm
using BField = Qty<1, -1, -2>;         // gauss

}  // namespace mevac
