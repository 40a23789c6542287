#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mevac/macro.hpp"
#include "mevac/material.hpp"
#include "mevac/modes.hpp"
#include "mevac/quantity.hpp"

// Boundary-complete force accounting: bulk region entries, the two
// magnetoelectric-segment surface entries, the naive ledger that drops the
// exit surface, and the first-law audit over ledger plus flow.

namespace mevac::ledger {

enum class Topology { open_tube, closed_loop };

struct Geometry {
  Length a;  // tube radius
  Length L;  // tube length; closed-loop axis coordinate is periodic in L
  Length me_start;
  Length me_end;
  Topology topology;

  Geometry(Length a_, Length L_, Length me_start_, Length me_end_,
           Topology topo)
      : a(a_), L(L_), me_start(me_start_), me_end(me_end_), topology(topo) {
    if (!(a.value() > 0.0)) {
      throw std::invalid_argument("geometry: tube radius must be > 0");
    }
    if (!(L.value() > 0.0)) {
      throw std::invalid_argument("geometry: tube length must be > 0");
    }
    if (!(me_start.value() >= 0.0) || !(me_end.value() >= me_start.value()) ||
        !(me_end.value() <= L.value())) {
      throw std::invalid_argument(
          "geometry: me_segment must satisfy 0 <= start <= end <= L");
    }
  }

  [[nodiscard]] bool me_segment_degenerate() const {
    return me_start.value() == me_end.value();
  }
};

enum class EntryLabel { f1, f2, f12, f21 };
enum class Provenance { bulk, surface };
enum class LedgerMode { naive, full };
enum class Surface { s12, s21 };

struct LedgerEntry {
  EntryLabel label;
  ForceDensity force_density;
  Provenance provenance;
};

inline const char* to_string(EntryLabel l) {
  switch (l) {
    case EntryLabel::f1: return "f1";
    case EntryLabel::f2: return "f2";
    case EntryLabel::f12: return "f12";
    case EntryLabel::f21: return "f21";
  }
  return "?";
}

struct ForceLedger {
  std::vector<LedgerEntry> entries;
  ForceDensity net;  // the exact running sum of entries, in listed order
  LedgerMode mode;
  Stress T0;  // provenance: the stress the surface entries were built from
  std::vector<std::string> warnings;
};

// At steady state the bulk electromagnetic force density vanishes in both
// regions. Time-dependent chi is outside this ledger by construction.
inline ForceDensity bulk_region_force(int region, bool steady) {
  if (region != 1 && region != 2) {
    throw std::invalid_argument("bulk_region_force: region must be 1 or 2");
  }
  if (!steady) {
    throw std::invalid_argument(
        "bulk_region_force: time-dependent susceptibility is not a "
        "steady-state input; use macro::transient_impulse for chi(t) ramps");
  }
  return ForceDensity(0.0);
}

// Constant stress gradient spread over the tube length: +T0/L entering the
// segment at surface 12, and the exact negation at surface 21.
inline ForceDensity surface_force(Stress T0, Length L, Surface s) {
  if (!(L.value() > 0.0)) {
    throw std::invalid_argument("surface_force: L must be > 0");
  }
  const ForceDensity f12 = T0 / L;
  return s == Surface::s12 ? f12 : -f12;
}

// Naive mode keeps {f1, f2, f12} only, reproducing the apparent net force
// T0/L. Full mode adds f21 = -f12 and the net cancels identically, for both
// topologies: the exit surface restores the momentum taken up at entry. A
// degenerate segment has coincident surfaces; nothing can be dropped there,
// so both modes carry both entries and the net is zero, with a warning.
inline ForceLedger net_force(const Geometry& geom, Stress T0,
                             LedgerMode mode) {
  ForceLedger ledger;
  ledger.mode = mode;
  ledger.T0 = T0;

  const ForceDensity f1 = bulk_region_force(1, true);
  const ForceDensity f2 = bulk_region_force(2, true);
  const ForceDensity f12 = surface_force(T0, geom.L, Surface::s12);
  const ForceDensity f21 = surface_force(T0, geom.L, Surface::s21);

  ledger.entries.push_back({EntryLabel::f1, f1, Provenance::bulk});
  ledger.entries.push_back({EntryLabel::f2, f2, Provenance::bulk});
  ledger.entries.push_back({EntryLabel::f12, f12, Provenance::surface});

  const bool degenerate = geom.me_segment_degenerate();
  if (mode == LedgerMode::full || degenerate) {
    ledger.entries.push_back({EntryLabel::f21, f21, Provenance::surface});
  }
  if (degenerate) {
    ledger.warnings.push_back(
        "me_segment has zero length: both surface entries coincide and "
        "cancel; net force density is 0");
  }

  ForceDensity net(0.0);
  for (const LedgerEntry& e : ledger.entries) net += e.force_density;
  ledger.net = net;
  return ledger;
}

// Fig-2-style bookkeeping for one mode quartet: the momentum picked up when
// a mode enters the segment at surface 21 is returned, with the exact
// opposite sign, when it exits at surface 12.
inline MomentumDensity mode_momentum_delta(double omega, double E0k,
                                           const material::MaterialParams& m,
                                           Surface s) {
  const MomentumDensity enter =
      modes::averaged_momentum_density(omega, E0k, m).g_avg;
  return s == Surface::s21 ? enter : -enter;
}

enum class Verdict { consistent, first_law_violation };

struct AuditReport {
  ForceDensity net_force_density;
  Power implied_power;
  bool fields_steady;
  Verdict verdict;
};

inline const char* to_string(Verdict v) {
  return v == Verdict::consistent ? "consistent" : "first-law-violation";
}

// A steady configuration with a nonzero net force would drive the flow and
// dissipate flow.P watts with no energy source: that is the violation this
// audit flags. Both records must stem from the same T0.
inline AuditReport first_law_audit(const ForceLedger& ledger,
                                   const macro::FlowResult& flow,
                                   bool fields_steady) {
  if (ledger.T0.value() != flow.T0.value()) {
    throw std::invalid_argument(
        "first_law_audit: ledger and flow were computed from different T0 "
        "values; recompute both from one configuration");
  }
  const bool net_nonzero = ledger.net.value() != 0.0;
  const Power implied = net_nonzero ? flow.P : Power(0.0);
  const bool violation =
      fields_steady && net_nonzero && implied.value() > 0.0;
  return {ledger.net, implied, fields_steady,
          violation ? Verdict::first_law_violation : Verdict::consistent};
}

}  // namespace mevac::ledger
