#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "mevac/ledger.hpp"

using Catch::Matchers::ContainsSubstring;
using namespace mevac;
using namespace mevac::ledger;

namespace {

Geometry loop_geometry() {
  return {Length(0.1), Length(200.0), Length(0.0), Length(20.0),
          Topology::closed_loop};
}

material::MaterialParams make_material(double cxy, double cyx) {
  return {2.0, 1.0, material::MESusceptibility{cxy, cyx}, Viscosity(0.01)};
}

}  // namespace

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS(Geometry(Length(0.0), Length(1.0), Length(0.0),
                           Length(0.5), Topology::open_tube),
                  std::invalid_argument);
  CHECK_THROWS_AS(Geometry(Length(1.0), Length(0.0), Length(0.0),
                           Length(0.0), Topology::open_tube),
                  std::invalid_argument);
  CHECK_THROWS_AS(Geometry(Length(1.0), Length(1.0), Length(-0.1),
                           Length(0.5), Topology::open_tube),
                  std::invalid_argument);
  CHECK_THROWS_AS(Geometry(Length(1.0), Length(1.0), Length(0.6),
                           Length(0.5), Topology::open_tube),
                  std::invalid_argument);
  CHECK_THROWS_AS(Geometry(Length(1.0), Length(1.0), Length(0.5),
                           Length(1.5), Topology::open_tube),
                  std::invalid_argument);
  CHECK(Geometry(Length(1.0), Length(1.0), Length(0.3), Length(0.3),
                 Topology::open_tube)
            .me_segment_degenerate());
  CHECK_FALSE(loop_geometry().me_segment_degenerate());
}

TEST_CASE("bulk force density is zero at steady state, in both regions") {
  CHECK(bulk_region_force(1, true).value() == 0.0);
  CHECK(bulk_region_force(2, true).value() == 0.0);
  CHECK_THROWS_AS(bulk_region_force(3, true), std::invalid_argument);
  CHECK_THROWS_WITH(bulk_region_force(1, false),
                    ContainsSubstring("transient_impulse"));
}

TEST_CASE("surface forces are exact negations of each other") {
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> t0(-10.0, 10.0);
  std::uniform_real_distribution<double> len(1.0, 1000.0);
  for (int i = 0; i < 200; ++i) {
    const Stress T0(t0(rng));
    const Length L(len(rng));
    const ForceDensity f12 = surface_force(T0, L, Surface::s12);
    const ForceDensity f21 = surface_force(T0, L, Surface::s21);
    CHECK(f12.value() == (T0 / L).value());
    CHECK(f21.value() == -f12.value());
  }
  CHECK_THROWS_AS(surface_force(Stress(1.0), Length(0.0), Surface::s12),
                  std::invalid_argument);
}

TEST_CASE("full ledger cancels identically") {
  const Geometry geom = loop_geometry();
  const Stress T0(0.3);
  const ForceLedger led = net_force(geom, T0, LedgerMode::full);
  REQUIRE(led.entries.size() == 4);
  CHECK(led.entries[0].label == EntryLabel::f1);
  CHECK(led.entries[0].provenance == Provenance::bulk);
  CHECK(led.entries[1].label == EntryLabel::f2);
  CHECK(led.entries[2].label == EntryLabel::f12);
  CHECK(led.entries[2].provenance == Provenance::surface);
  CHECK(led.entries[3].label == EntryLabel::f21);
  CHECK(led.net.value() == 0.0);
  CHECK(led.T0.value() == 0.3);
  CHECK(led.mode == LedgerMode::full);
  CHECK(led.warnings.empty());
}

TEST_CASE("naive ledger reproduces the apparent drive T0/L") {
  const Geometry geom = loop_geometry();
  const Stress T0(0.3);
  const ForceLedger led = net_force(geom, T0, LedgerMode::naive);
  REQUIRE(led.entries.size() == 3);
  CHECK(led.net.value() ==
        surface_force(T0, geom.L, Surface::s12).value());
  CHECK(led.net.value() > 0.0);
}

TEST_CASE("the cancellation does not depend on the topology") {
  const Stress T0(2.5);
  for (const Topology topo : {Topology::open_tube, Topology::closed_loop}) {
    const Geometry geom(Length(0.2), Length(50.0), Length(5.0), Length(9.0),
                        topo);
    CHECK(net_force(geom, T0, LedgerMode::full).net.value() == 0.0);
    CHECK(net_force(geom, T0, LedgerMode::naive).net.value() ==
          (T0 / geom.L).value());
  }
}

TEST_CASE("a degenerate segment cannot drop a surface") {
  const Geometry geom(Length(0.1), Length(100.0), Length(3.0), Length(3.0),
                      Topology::open_tube);
  for (const LedgerMode mode : {LedgerMode::naive, LedgerMode::full}) {
    const ForceLedger led = net_force(geom, Stress(0.7), mode);
    CHECK(led.entries.size() == 4);
    CHECK(led.net.value() == 0.0);
    REQUIRE(led.warnings.size() == 1);
    CHECK_THAT(led.warnings[0], ContainsSubstring("zero length"));
  }
}

TEST_CASE("entry labels render stably") {
  CHECK(std::string(to_string(EntryLabel::f1)) == "f1");
  CHECK(std::string(to_string(EntryLabel::f2)) == "f2");
  CHECK(std::string(to_string(EntryLabel::f12)) == "f12");
  CHECK(std::string(to_string(EntryLabel::f21)) == "f21");
  CHECK(std::string(to_string(Verdict::consistent)) == "consistent");
  CHECK(std::string(to_string(Verdict::first_law_violation)) ==
        "first-law-violation");
}

TEST_CASE("per-mode surface momentum deltas negate exactly") {
  std::mt19937 rng(707);
  std::uniform_real_distribution<double> chi_d(-0.05, 0.05);
  std::uniform_real_distribution<double> eps_d(1.0, 5.0);
  std::uniform_real_distribution<double> lomega(10.0, 16.0);
  std::uniform_real_distribution<double> lE(-6.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const material::MaterialParams m = make_material(chi_d(rng), chi_d(rng));
    const double omega = std::pow(10.0, lomega(rng));
    const double E0k = std::pow(10.0, lE(rng));
    const MomentumDensity enter =
        mode_momentum_delta(omega, E0k, m, Surface::s21);
    const MomentumDensity exit =
        mode_momentum_delta(omega, E0k, m, Surface::s12);
    CHECK(exit.value() == -enter.value());
    CHECK(enter.value() ==
          modes::averaged_momentum_density(omega, E0k, m).g_avg.value());
  }
}

TEST_CASE("first-law audit flags exactly the steady naive nonzero case") {
  const Geometry geom = loop_geometry();
  const material::MaterialParams m = make_material(0.0, 0.0);
  for (const bool steady : {true, false}) {
    for (const LedgerMode mode : {LedgerMode::naive, LedgerMode::full}) {
      for (const double t0 : {0.0, 0.3}) {
        const Stress T0(t0);
        const ForceLedger led = net_force(geom, T0, mode);
        const macro::FlowResult flow =
            macro::compute_flow(T0, geom.a, geom.L, m.viscosity());
        const AuditReport report = first_law_audit(led, flow, steady);
        const bool expect_violation =
            steady && mode == LedgerMode::naive && t0 > 0.0;
        CHECK((report.verdict == Verdict::first_law_violation) ==
              expect_violation);
        CHECK(report.fields_steady == steady);
        if (led.net.value() == 0.0) {
          CHECK(report.implied_power.value() == 0.0);
        } else {
          CHECK(report.implied_power.value() == flow.P.value());
        }
        if (expect_violation) {
          CHECK(report.implied_power.value() > 0.0);
        }
      }
    }
  }
}

TEST_CASE("the audit refuses records built from different stresses") {
  const Geometry geom = loop_geometry();
  const ForceLedger led = net_force(geom, Stress(0.3), LedgerMode::full);
  const macro::FlowResult flow = macro::compute_flow(
      Stress(0.4), geom.a, geom.L, Viscosity(3.75e-4));
  CHECK_THROWS_AS(first_law_audit(led, flow, true), std::invalid_argument);
}
