#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "mevac/config.hpp"
#include "mevac/constants.hpp"
#include "mevac/ledger.hpp"
#include "mevac/macro.hpp"
#include "mevac/modes.hpp"
#include "mevac/report.hpp"
#include "mevac/units.hpp"
#include "mevac/vacuum.hpp"

// One driver per subcommand. Every driver returns a fully populated
// ReportBuilder; the binary decides where the table and the JSON go and what
// warnings mean under --strict. Each report lists every intermediate
// quantity of its stage, not just the headline number.

namespace mevac::cli {

namespace detail {

inline void require(bool present, const char* command, const char* section) {
  if (!present) {
    throw ConfigError(std::string("config: ") + command +
                      " requires a [" + section + "] section");
  }
}

inline double rel_diff(double a, double b) {
  const double denom = std::max(std::abs(a), std::abs(b));
  return denom == 0.0 ? 0.0 : std::abs(a - b) / denom;
}

inline vacuum::VacuumStressResult vacuum_result(const RunConfig& cfg) {
  return vacuum::vacuum_stress(cfg.vacuum_material(),
                               vacuum::CutoffSpec(cfg.vacuum->lambda_c));
}

inline void describe_vacuum_conventions(ReportBuilder& rb,
                                        const vacuum::VacuumStressResult& r) {
  rb.conventions()["mode_density_model"] = "one-dimensional-axis";
  rb.conventions()["quantization"] =
      "half quantum (hbar*omega/2) per mode, cycle averaged, isotropic "
      "baseline index n0";
  rb.conventions()["dispersion"] = "omega = c k / n0";
  rb.conventions()["cutoff"] = "sharp at k_c = 2 pi / lambda_c";
  rb.conventions()["prefactor_C"] = r.prefactor_C;
}

inline void attach_ledger(ReportBuilder& rb, const ledger::ForceLedger& led,
                          units::System system) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : led.entries) {
    entries.push_back(
        {{"label", ledger::to_string(e.label)},
         {"value", units::to_system(e.force_density.value(),
                                    units::Dim::force_density, system)},
         {"unit", std::string(units::unit_name(units::Dim::force_density,
                                               system))},
         {"provenance",
          e.provenance == ledger::Provenance::bulk ? "bulk" : "surface"}});
    rb.result(ledger::to_string(e.label), e.force_density.value(),
              units::Dim::force_density);
  }
  rb.extra("ledger_entries", entries);
  rb.result("net", led.net.value(), units::Dim::force_density);
  for (const std::string& w : led.warnings) rb.warning("ledger: " + w);
}

}  // namespace detail

inline constexpr const char* flow_discrepancy_note =
    "discrepancy: P is computed as T0*Phi; at the benchmark working point "
    "(T0 = 0.03 Pa, a = 1 mm, L = 2 m, U = 100 um/s) this gives about "
    "4.7e-12 W, not the nanowatt scale sometimes quoted for the same "
    "numbers";

// Classical-beam net mode stress: closed form, quadrature oracle, and the
// time-derivative diagnostics, all from one [beam] + [material] pair.
inline ReportBuilder cmd_mode_stress(const RunConfig& cfg) {
  detail::require(cfg.beam.has_value(), "mode-stress", "beam");
  const auto& m = cfg.material;
  const double omega = cfg.beam->omega;
  const double E0k = cfg.beam->E0k;

  const Stress closed = modes::net_mode_stress(omega, E0k, m);
  const Stress quad_coarse = modes::net_mode_stress_quadrature(
      omega, E0k, m, 0.0, modes::default_quadrature_points);
  const Stress quad = modes::net_mode_stress_quadrature(
      omega, E0k, m, 0.0, 2 * modes::default_quadrature_points);
  const modes::ModeAverages avg =
      modes::averaged_momentum_density(omega, E0k, m);
  const ForceDensity dgdt = modes::dgdt_time_average(omega, E0k, m);

  ReportBuilder rb("mode-stress", cfg);
  rb.result("net_stress_closed", closed.value(), units::Dim::stress);
  rb.result("net_stress_quadrature", quad.value(), units::Dim::stress);
  rb.result_dimensionless("net_stress_rel_diff",
                          detail::rel_diff(closed.value(), quad.value()));
  rb.result("g_avg", avg.g_avg.value(), units::Dim::momentum_density);
  rb.result("T_zz_avg", avg.T_zz_avg.value(), units::Dim::stress);
  rb.result("dg_dt_avg", avg.dg_dt_avg.value(), units::Dim::force_density);
  rb.result("dT_dz_avg", avg.dT_dz_avg.value(), units::Dim::force_density);
  rb.result("dg_dt_quadrature", dgdt.value(), units::Dim::force_density);
  rb.result("omega", omega, units::Dim::angular_velocity);
  rb.result("E0k", E0k, units::Dim::e_field);

  rb.conventions()["phase_convention"] = "cos(k z - omega t)";
  rb.conventions()["closed_form_order"] = "first order in chi";
  rb.conventions()["quadrature"] = {
      {"rule", "composite midpoint"},
      {"n_points", 2 * modes::default_quadrature_points},
      {"richardson_check_n_points", modes::default_quadrature_points},
      {"richardson_delta",
       std::abs(quad.value() - quad_coarse.value())}};
  return rb;
}

inline ReportBuilder cmd_vacuum(const RunConfig& cfg) {
  detail::require(cfg.vacuum.has_value(), "vacuum", "vacuum");
  const vacuum::VacuumStressResult r = detail::vacuum_result(cfg);

  ReportBuilder rb("vacuum", cfg);
  rb.result("T0", r.T0.value(), units::Dim::stress);
  rb.result("g0", r.g0.value(), units::Dim::momentum_density);
  rb.result_dimensionless("prefactor_C", r.prefactor_C);
  rb.result_dimensionless("delta_chi", r.delta_chi);
  rb.result("lambda_c", r.lambda_c.value(), units::Dim::length);
  rb.result("mode_sum_T0", r.mode_sum_T0.value(), units::Dim::stress);
  rb.result_dimensionless(
      "mode_sum_rel_diff",
      detail::rel_diff(r.T0.value(), r.mode_sum_T0.value()));
  if (cfg.vacuum->from_target) {
    rb.result("t0_target", cfg.vacuum->t0_target.value(), units::Dim::stress);
    rb.note("delta_chi was back-solved from vacuum.t0_target; it is a "
            "working-point input, not a material measurement");
  }
  for (const std::string& w : r.warnings) rb.warning("vacuum: " + w);
  detail::describe_vacuum_conventions(rb, r);
  return rb;
}

inline ReportBuilder cmd_ledger(const RunConfig& cfg, ledger::LedgerMode mode) {
  detail::require(cfg.vacuum.has_value(), "ledger", "vacuum");
  detail::require(cfg.geometry.has_value(), "ledger", "geometry");
  const vacuum::VacuumStressResult vac = detail::vacuum_result(cfg);
  const ledger::ForceLedger led =
      ledger::net_force(*cfg.geometry, vac.T0, mode);

  ReportBuilder rb("ledger", cfg);
  rb.result_text("mode",
                 mode == ledger::LedgerMode::naive ? "naive" : "full");
  rb.result_text("topology",
                 cfg.geometry->topology == ledger::Topology::closed_loop
                     ? "closed-loop"
                     : "open-tube");
  rb.result("T0", vac.T0.value(), units::Dim::stress);
  rb.result("L", cfg.geometry->L.value(), units::Dim::length);
  detail::attach_ledger(rb, led, cfg.output_units);
  for (const std::string& w : vac.warnings) rb.warning("vacuum: " + w);
  detail::describe_vacuum_conventions(rb, vac);
  return rb;
}

inline macro::FlowResult flow_from_config(
    const RunConfig& cfg, const vacuum::VacuumStressResult& vac) {
  return macro::compute_flow(vac.T0, cfg.geometry->a, cfg.geometry->L,
                             cfg.material.viscosity());
}

inline ReportBuilder cmd_flow(const RunConfig& cfg) {
  detail::require(cfg.vacuum.has_value(), "flow", "vacuum");
  detail::require(cfg.geometry.has_value(), "flow", "geometry");
  const vacuum::VacuumStressResult vac = detail::vacuum_result(cfg);
  const macro::FlowResult flow = flow_from_config(cfg, vac);

  ReportBuilder rb("flow", cfg);
  rb.result("T0", vac.T0.value(), units::Dim::stress);
  rb.result("a", cfg.geometry->a.value(), units::Dim::length);
  rb.result("L", cfg.geometry->L.value(), units::Dim::length);
  rb.result("viscosity", cfg.material.viscosity().value(),
            units::Dim::viscosity);
  rb.result("U_vac", flow.U_vac.value(), units::Dim::speed);
  rb.result("Phi", flow.Phi.value(), units::Dim::flow_rate);
  rb.result("P", flow.P.value(), units::Dim::power);
  rb.note(flow_discrepancy_note);
  for (const std::string& w : vac.warnings) rb.warning("vacuum: " + w);
  detail::describe_vacuum_conventions(rb, vac);
  return rb;
}

inline ReportBuilder cmd_radiometer(const RunConfig& cfg) {
  detail::require(cfg.vacuum.has_value(), "radiometer", "vacuum");
  detail::require(cfg.radiometer.has_value(), "radiometer", "radiometer");
  const vacuum::VacuumStressResult vac = detail::vacuum_result(cfg);
  const macro::RadiometerResult rad = macro::radiometer_spin(
      vac.T0, cfg.radiometer->vane_area, cfg.radiometer->arm,
      cfg.radiometer->gamma);

  ReportBuilder rb("radiometer", cfg);
  rb.result("T0", vac.T0.value(), units::Dim::stress);
  rb.result("vane_area", cfg.radiometer->vane_area.value(), units::Dim::area);
  rb.result("arm", cfg.radiometer->arm.value(), units::Dim::length);
  rb.result("gamma", cfg.radiometer->gamma.value(),
            units::Dim::pivot_friction);
  rb.result("torque", rad.torque.value(), units::Dim::torque);
  rb.result("omega_vac", rad.omega_vac.value(),
            units::Dim::angular_velocity);
  rb.result("dissipation", rad.dissipation.value(), units::Dim::power);
  for (const std::string& w : vac.warnings) rb.warning("vacuum: " + w);
  detail::describe_vacuum_conventions(rb, vac);
  return rb;
}

// Impulse for the ramp from chi = 0 to the working susceptibility.
inline ReportBuilder cmd_transient(const RunConfig& cfg) {
  detail::require(cfg.vacuum.has_value(), "transient", "vacuum");
  const vacuum::VacuumStressResult vac = detail::vacuum_result(cfg);
  const material::MESusceptibility chi_initial{0.0, 0.0};
  const material::MESusceptibility chi_final =
      cfg.vacuum_material().susceptibility();
  const macro::TransientResult tr =
      macro::transient_impulse(vac, chi_initial, chi_final);

  ReportBuilder rb("transient", cfg);
  rb.result("T0", vac.T0.value(), units::Dim::stress);
  rb.result("impulse_density", tr.impulse_density.value(),
            units::Dim::momentum_density);
  rb.result_dimensionless("delta_chi_initial",
                          material::delta_chi(chi_initial));
  rb.result_dimensionless("delta_chi_final", material::delta_chi(chi_final));
  rb.note(tr.ramp_energy_note);
  rb.conventions()["ramp"] = "chi ramps from zero to the working value";
  for (const std::string& w : vac.warnings) rb.warning("vacuum: " + w);
  detail::describe_vacuum_conventions(rb, vac);
  return rb;
}

inline ReportBuilder cmd_audit(const RunConfig& cfg, ledger::LedgerMode mode) {
  detail::require(cfg.vacuum.has_value(), "audit", "vacuum");
  detail::require(cfg.geometry.has_value(), "audit", "geometry");
  const vacuum::VacuumStressResult vac = detail::vacuum_result(cfg);
  const ledger::ForceLedger led =
      ledger::net_force(*cfg.geometry, vac.T0, mode);
  const macro::FlowResult flow = flow_from_config(cfg, vac);
  const ledger::AuditReport audit =
      ledger::first_law_audit(led, flow, cfg.fields_steady);

  ReportBuilder rb("audit", cfg);
  rb.result_text("verdict", ledger::to_string(audit.verdict));
  rb.result_text("mode",
                 mode == ledger::LedgerMode::naive ? "naive" : "full");
  rb.result_text("fields_steady", audit.fields_steady ? "true" : "false");
  rb.result("net_force_density", audit.net_force_density.value(),
            units::Dim::force_density);
  rb.result("implied_power", audit.implied_power.value(), units::Dim::power);
  rb.result("T0", vac.T0.value(), units::Dim::stress);
  rb.result("U_vac", flow.U_vac.value(), units::Dim::speed);
  rb.result("Phi", flow.Phi.value(), units::Dim::flow_rate);
  detail::attach_ledger(rb, led, cfg.output_units);
  for (const std::string& w : vac.warnings) rb.warning("vacuum: " + w);
  detail::describe_vacuum_conventions(rb, vac);
  return rb;
}

// Columnar lambda_c sweep, linear spacing, data-only output for external
// plotting. Bounds are read in the config input system; columns are written
// in the output system.
inline std::string sweep_lambda_c(const RunConfig& cfg, double start,
                                  double stop, long n) {
  detail::require(cfg.vacuum.has_value(), "vacuum --sweep", "vacuum");
  if (!(start > 0.0) || !(stop > 0.0) || n < 1) {
    throw ConfigError(
        "sweep: lambda_c bounds must be > 0 and the count must be >= 1");
  }
  const material::MaterialParams vm = cfg.vacuum_material();
  const units::System out = cfg.output_units;
  std::string text;
  text += "# mevac vacuum sweep, linear in lambda_c\n";
  text += "# columns: lambda_c[" +
          std::string(units::unit_name(units::Dim::length, out)) + "]\tT0[" +
          std::string(units::unit_name(units::Dim::stress, out)) + "]\tg0[" +
          std::string(units::unit_name(units::Dim::momentum_density, out)) +
          "]\n";
  for (long i = 0; i < n; ++i) {
    const double frac =
        n == 1 ? 0.0
               : static_cast<double>(i) / static_cast<double>(n - 1);
    const double lam_input = start + (stop - start) * frac;
    const Length lam(
        units::from_system(lam_input, units::Dim::length, cfg.input_units));
    const vacuum::VacuumStressResult r =
        vacuum::vacuum_stress(vm, vacuum::CutoffSpec(lam));
    text += repr(units::to_system(lam.value(), units::Dim::length, out)) +
            "\t" +
            repr(units::to_system(r.T0.value(), units::Dim::stress, out)) +
            "\t" +
            repr(units::to_system(r.g0.value(),
                                  units::Dim::momentum_density, out)) +
            "\n";
  }
  return text;
}

}  // namespace mevac::cli
