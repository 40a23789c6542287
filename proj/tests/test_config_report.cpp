#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "mevac/commands.hpp"
#include "mevac/config.hpp"
#include "mevac/report.hpp"
#include "mevac/vacuum.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;
using namespace mevac;
using namespace mevac::cli;

namespace {

constexpr const char* schema_line = "schema = mevac-config/1\n";

RunConfig resolve(const std::string& body) {
  return resolve_config(parse_config_text(schema_line + body));
}

constexpr const char* minimal_material =
    "[material]\n"
    "epsilon = 2.25\n"
    "mu = 1.0\n"
    "chi_xy = 1e-4\n"
    "chi_yx = -1e-4\n"
    "viscosity = 0.01\n";

bool has_note(const nlohmann::ordered_json& doc, const std::string& text) {
  for (const auto& n : doc["notes"]) {
    if (n.get<std::string>() == text) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("config text parsing") {
  SECTION("comments, blank lines and whitespace are tolerated") {
    const RawConfig raw = parse_config_text(
        "# leading comment\n"
        "schema = mevac-config/1\n"
        "\n"
        "  [material]  \n"
        "  epsilon =  2.25 \n"
        "# trailing comment\n");
    REQUIRE(raw.sections.size() == 1);
    CHECK(raw.sections[0].name == "material");
    REQUIRE(raw.sections[0].find("epsilon") != nullptr);
    CHECK(*raw.sections[0].find("epsilon") == "2.25");
  }
  SECTION("schema tag is mandatory and checked") {
    CHECK_THROWS_WITH(parse_config_text("[material]\nepsilon = 2\n"),
                      ContainsSubstring("schema"));
    CHECK_THROWS_WITH(
        parse_config_text("schema = mevac-config/2\n[material]\n"),
        ContainsSubstring("schema"));
  }
  SECTION("only the schema tag may precede the first section") {
    CHECK_THROWS_WITH(
        parse_config_text("schema = mevac-config/1\nepsilon = 2\n"),
        ContainsSubstring("before any section"));
  }
  SECTION("malformed lines carry their line number") {
    CHECK_THROWS_WITH(parse_config_text(
                          "schema = mevac-config/1\n[material]\nepsilon\n"),
                      ContainsSubstring("line 3"));
    CHECK_THROWS_WITH(
        parse_config_text("schema = mevac-config/1\n[material\n"),
        ContainsSubstring("line 2"));
  }
  SECTION("duplicates are rejected") {
    CHECK_THROWS_WITH(parse_config_text("schema = mevac-config/1\n"
                                        "[material]\n[material]\n"),
                      ContainsSubstring("duplicate section"));
    CHECK_THROWS_WITH(parse_config_text("schema = mevac-config/1\n"
                                        "[material]\na = 1\na = 2\n"),
                      ContainsSubstring("duplicate key"));
  }
}

TEST_CASE("number and bool parsing are strict") {
  CHECK_THROWS_WITH(resolve("[material]\n"
                            "epsilon = soup\n"
                            "mu = 1\nchi_xy = 0\nchi_yx = 0\n"
                            "viscosity = 0.01\n"),
                    ContainsSubstring("material.epsilon"));
  CHECK_THROWS_AS(resolve("[material]\n"
                          "epsilon = 2.25x\n"
                          "mu = 1\nchi_xy = 0\nchi_yx = 0\n"
                          "viscosity = 0.01\n"),
                  ConfigError);
  CHECK_THROWS_WITH(resolve(std::string(minimal_material) +
                            "[audit]\nfields_steady = maybe\n"),
                    ContainsSubstring("fields_steady"));
}

TEST_CASE("material resolution") {
  SECTION("explicit chi pair") {
    const RunConfig cfg = resolve(minimal_material);
    CHECK(cfg.material.epsilon() == 2.25);
    CHECK(cfg.material.mu() == 1.0);
    CHECK(cfg.material.susceptibility().chi_xy == 1e-4);
    CHECK(cfg.material.susceptibility().chi_yx == -1e-4);
    CHECK(cfg.material.viscosity().value() == 0.01);
  }
  SECTION("missing required key") {
    CHECK_THROWS_WITH(resolve("[material]\nepsilon = 2\nmu = 1\n"
                              "chi_xy = 0\nchi_yx = 0\n"),
                      ContainsSubstring("material.viscosity"));
  }
  SECTION("chi pair and induction triple are mutually exclusive") {
    CHECK_THROWS_WITH(resolve("[material]\nepsilon = 2\nmu = 1\n"
                              "chi_xy = 0\nchi_yx = 0\nalpha = 1e-6\n"
                              "E_applied = 1\nB_applied = 1\n"
                              "viscosity = 0.01\n"),
                      ContainsSubstring("both"));
    CHECK_THROWS_WITH(resolve("[material]\nepsilon = 2\nmu = 1\n"
                              "viscosity = 0.01\n"),
                      ContainsSubstring("neither"));
  }
  SECTION("induction triple, Gaussian fields") {
    const RunConfig cfg = resolve(
        "[material]\nepsilon = 2\nmu = 1\nalpha = 2e-6\n"
        "E_applied = 3\nB_applied = 0.5\nviscosity = 0.01\n");
    CHECK_THAT(cfg.material.susceptibility().chi_xy, WithinRel(3e-6, 1e-15));
    CHECK(cfg.material.susceptibility().chi_yx ==
          -cfg.material.susceptibility().chi_xy);
  }
  SECTION("induction triple, SI fields; alpha stays Gaussian") {
    const RunConfig cfg = resolve(
        "[units]\ninput = si\n"
        "[material]\nepsilon = 2\nmu = 1\nalpha = 2e-6\n"
        "E_applied = 2.99792458e4\nB_applied = 1e-4\nviscosity = 0.001\n");
    // 2.99792458e4 V/m is 1 statvolt/cm; 1e-4 T is 1 gauss.
    CHECK_THAT(cfg.material.susceptibility().chi_xy, WithinRel(2e-6, 1e-15));
    CHECK_THAT(cfg.material.viscosity().value(), WithinRel(0.01, 1e-15));
  }
  SECTION("unknown keys are rejected") {
    CHECK_THROWS_WITH(resolve("[material]\nepsilon = 2\nmu = 1\n"
                              "chi_xy = 0\nchi_yx = 0\n"
                              "viscosity = 0.01\nrho = 1\n"),
                      ContainsSubstring("unknown key material.rho"));
  }
}

TEST_CASE("vacuum resolution") {
  SECTION("explicit delta_chi") {
    const RunConfig cfg = resolve(std::string(minimal_material) +
                                  "[vacuum]\nlambda_c = 1e-8\n"
                                  "delta_chi = 2e-4\n");
    REQUIRE(cfg.vacuum.has_value());
    CHECK(cfg.vacuum->lambda_c.value() == 1e-8);
    CHECK(cfg.vacuum->delta_chi == 2e-4);
    CHECK_FALSE(cfg.vacuum->from_target);
  }
  SECTION("back-solved from a target stress") {
    const RunConfig cfg = resolve(std::string(minimal_material) +
                                  "[vacuum]\nlambda_c = 1e-8\n"
                                  "t0_target = 0.3\n");
    REQUIRE(cfg.vacuum.has_value());
    CHECK(cfg.vacuum->from_target);
    CHECK(cfg.vacuum->t0_target.value() == 0.3);
    // n0 = 1.5 here, so C = pi^2/1.5 and the back-solve is pinned.
    CHECK(cfg.vacuum->delta_chi == 1.4421681653690538e-17);
    CHECK(cfg.vacuum->delta_chi ==
          vacuum::required_delta_chi(Stress(0.3), Length(1e-8),
                                     vacuum::prefactor_C(cfg.material)));
  }
  SECTION("exactly one of delta_chi and t0_target") {
    CHECK_THROWS_WITH(resolve(std::string(minimal_material) +
                              "[vacuum]\nlambda_c = 1e-8\n"
                              "delta_chi = 2e-4\nt0_target = 0.3\n"),
                      ContainsSubstring("both"));
    CHECK_THROWS_WITH(resolve(std::string(minimal_material) +
                              "[vacuum]\nlambda_c = 1e-8\n"),
                      ContainsSubstring("neither"));
  }
  SECTION("the vacuum sector never falls back to the material chi pair") {
    const RunConfig cfg = resolve(std::string(minimal_material) +
                                  "[vacuum]\nlambda_c = 1e-8\n"
                                  "delta_chi = 6e-5\n");
    const material::MaterialParams vm = cfg.vacuum_material();
    CHECK(vm.susceptibility().chi_xy == 3e-5);
    CHECK(vm.susceptibility().chi_yx == -3e-5);
    CHECK(vm.epsilon() == cfg.material.epsilon());
    CHECK(material::delta_chi(vm.susceptibility()) == 6e-5);
  }
}

TEST_CASE("geometry resolution") {
  const std::string geo =
      "[geometry]\na = 0.1\nL = 200\nme_start = 0\nme_end = 20\n";
  SECTION("topologies") {
    CHECK(resolve(std::string(minimal_material) + geo +
                  "topology = closed-loop\n")
              .geometry->topology == ledger::Topology::closed_loop);
    CHECK(resolve(std::string(minimal_material) + geo +
                  "topology = open-tube\n")
              .geometry->topology == ledger::Topology::open_tube);
    CHECK_THROWS_WITH(
        resolve(std::string(minimal_material) + geo + "topology = moebius\n"),
        ContainsSubstring("topology"));
    CHECK_THROWS_WITH(resolve(std::string(minimal_material) + geo),
                      ContainsSubstring("geometry.topology"));
  }
  SECTION("degenerate segment warns at resolve time") {
    const RunConfig cfg = resolve(
        std::string(minimal_material) +
        "[geometry]\na = 0.1\nL = 200\nme_start = 5\nme_end = 5\n"
        "topology = open-tube\n");
    REQUIRE_FALSE(cfg.warnings.empty());
    CHECK_THAT(cfg.warnings.back(), ContainsSubstring("zero length"));
  }
}

TEST_CASE("beam resolution") {
  CHECK_THROWS_WITH(resolve(std::string(minimal_material) +
                            "[beam]\nomega = 0\nE0k = 1\n"),
                    ContainsSubstring("omega"));
  CHECK_THROWS_WITH(resolve(std::string(minimal_material) +
                            "[beam]\nomega = 1e15\nE0k = -1\n"),
                    ContainsSubstring("E0k"));
  const RunConfig si = resolve("[units]\ninput = si\n" +
                               std::string(minimal_material) +
                               "[beam]\nomega = 1e15\nE0k = 2.99792458e4\n");
  CHECK(si.beam->omega == 1e15);
  CHECK(si.beam->E0k == 1.0);
}

TEST_CASE("units section") {
  SECTION("output defaults to the input system") {
    const RunConfig cfg = resolve("[units]\ninput = si\n" +
                                  std::string(minimal_material));
    CHECK(cfg.input_units == units::System::si);
    CHECK(cfg.output_units == units::System::si);
  }
  SECTION("independent output override") {
    const RunConfig cfg = resolve(
        "[units]\ninput = si\noutput = gaussian\n" +
        std::string(minimal_material));
    CHECK(cfg.input_units == units::System::si);
    CHECK(cfg.output_units == units::System::gaussian);
  }
  SECTION("defaults are Gaussian on both sides") {
    const RunConfig cfg = resolve(minimal_material);
    CHECK(cfg.input_units == units::System::gaussian);
    CHECK(cfg.output_units == units::System::gaussian);
  }
  SECTION("bad values and keys are rejected") {
    CHECK_THROWS_WITH(resolve("[units]\ninput = imperial\n" +
                              std::string(minimal_material)),
                      ContainsSubstring("si or gaussian"));
    CHECK_THROWS_WITH(resolve("[units]\nsystem = si\n" +
                              std::string(minimal_material)),
                      ContainsSubstring("unknown key units.system"));
  }
  SECTION("SI material quantities are ingested through the factor table") {
    const RunConfig cfg = resolve(
        "[units]\ninput = si\n"
        "[material]\nepsilon = 2.25\nmu = 1.0\nchi_xy = 0\nchi_yx = 0\n"
        "viscosity = 3.75e-5\n"
        "[vacuum]\nlambda_c = 1e-10\nt0_target = 0.03\n");
    CHECK_THAT(cfg.material.viscosity().value(), WithinRel(3.75e-4, 1e-15));
    CHECK_THAT(cfg.vacuum->lambda_c.value(), WithinRel(1e-8, 1e-15));
    CHECK(cfg.vacuum->t0_target.value() == 0.3);
  }
}

TEST_CASE("unknown sections are rejected") {
  CHECK_THROWS_WITH(resolve(std::string(minimal_material) + "[plasma]\n"),
                    ContainsSubstring("unknown section [plasma]"));
}

TEST_CASE("notes are preserved verbatim and echoed") {
  const RunConfig cfg = resolve(std::string(minimal_material) +
                                "[notes]\n"
                                "origin = eta was back-solved, not measured\n"
                                "extra = second remark\n");
  REQUIRE(cfg.notes.size() == 2);
  CHECK(cfg.notes[0] == "eta was back-solved, not measured");
  CHECK(cfg.notes[1] == "second remark");
  CHECK(cfg.echo["material"]["epsilon"] == "2.25");
  CHECK(cfg.echo["notes"]["origin"] == "eta was back-solved, not measured");
}

TEST_CASE("missing config files are a config error") {
  CHECK_THROWS_WITH(load_run_config("/nonexistent/mevac.conf"),
                    ContainsSubstring("cannot open"));
}

TEST_CASE("a config file on disk round-trips through the loader") {
  namespace fs = std::filesystem;
  const fs::path p = fs::temp_directory_path() / "mevac_roundtrip.conf";
  {
    std::ofstream out(p);
    out << schema_line << minimal_material
        << "[vacuum]\nlambda_c = 1e-8\ndelta_chi = 2e-4\n";
  }
  const RunConfig cfg = load_run_config(p.string());
  CHECK(cfg.material.epsilon() == 2.25);
  CHECK(cfg.vacuum->delta_chi == 2e-4);
  fs::remove(p);
}

TEST_CASE("repr emits shortest round-trip decimal strings") {
  CHECK(repr(0.1) == "0.1");
  CHECK(repr(0.03) == "0.03");
  CHECK(repr(1e15) == "1e+15");
  CHECK(repr(0.0) == "0");
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng) * std::pow(10.0, (i % 61) - 30);
    CHECK(std::stod(repr(x)) == x);
  }
}

TEST_CASE("report builder shapes the record") {
  const RunConfig cfg = resolve("[units]\ninput = gaussian\noutput = si\n" +
                                std::string(minimal_material));
  ReportBuilder rb("vacuum", cfg);
  rb.result("T0", 0.3, units::Dim::stress);
  rb.result_dimensionless("prefactor_C", 6.5);
  rb.result_text("verdict", "consistent");
  rb.warning("vacuum: something soft");
  rb.note("a remark");
  const nlohmann::ordered_json doc = rb.finish();

  CHECK(doc["schema"] == "mevac-report/1");
  CHECK(doc["command"] == "vacuum");
  CHECK(doc["results"]["T0"]["value"].get<double>() == 0.03);
  CHECK(doc["results"]["T0"]["unit"] == "Pa");
  CHECK(doc["results"]["prefactor_C"]["unit"] == "1");
  CHECK(doc["results"]["verdict"]["value"] == "consistent");
  CHECK(doc["conventions"]["unit_system"] == "si");
  CHECK(doc["conventions"]["internal_units"] == "gaussian");
  CHECK(doc["conventions"]["constants"]["c_cm_per_s"].get<double>() ==
        c_light);
  bool found_warning = false;
  for (const auto& w : doc["warnings"]) {
    if (w.get<std::string>() == "vacuum: something soft") found_warning = true;
  }
  CHECK(found_warning);
  CHECK(has_note(doc, "a remark"));
  CHECK(doc["config"]["material"]["epsilon"] == "2.25");

  const std::string table = rb.to_table();
  CHECK_THAT(table, ContainsSubstring("command: vacuum"));
  CHECK_THAT(table, ContainsSubstring("T0"));
  CHECK_THAT(table, ContainsSubstring("Pa"));
  CHECK_THAT(table, ContainsSubstring("warning: vacuum: something soft"));
  CHECK_THAT(table, ContainsSubstring("note: a remark"));

  const std::string js = rb.to_json();
  CHECK(js.back() == '\n');
  CHECK(nlohmann::ordered_json::parse(js) == doc);
}

TEST_CASE("command drivers validate their required sections") {
  const RunConfig bare = resolve(minimal_material);
  CHECK_THROWS_WITH(cmd_mode_stress(bare), ContainsSubstring("[beam]"));
  CHECK_THROWS_WITH(cmd_vacuum(bare), ContainsSubstring("[vacuum]"));
  CHECK_THROWS_WITH(cmd_flow(bare), ContainsSubstring("[vacuum]"));
  CHECK_THROWS_WITH(cmd_transient(bare), ContainsSubstring("[vacuum]"));
  CHECK_THROWS_WITH(cmd_radiometer(bare), ContainsSubstring("[vacuum]"));
  const RunConfig vac_only = resolve(std::string(minimal_material) +
                                     "[vacuum]\nlambda_c = 1e-8\n"
                                     "delta_chi = 2e-4\n");
  CHECK_THROWS_WITH(cmd_ledger(vac_only, ledger::LedgerMode::full),
                    ContainsSubstring("[geometry]"));
  CHECK_THROWS_WITH(cmd_audit(vac_only, ledger::LedgerMode::full),
                    ContainsSubstring("[geometry]"));
  CHECK_THROWS_WITH(cmd_radiometer(vac_only),
                    ContainsSubstring("[radiometer]"));
}

TEST_CASE("command drivers populate their records") {
  const RunConfig cfg = resolve(
      std::string(minimal_material) +
      "[vacuum]\nlambda_c = 1e-8\nt0_target = 0.3\n"
      "[geometry]\na = 0.1\nL = 200\nme_start = 0\nme_end = 20\n"
      "topology = closed-loop\n"
      "[radiometer]\nvane_area = 1\narm = 1\ngamma = 1\n"
      "[beam]\nomega = 1e15\nE0k = 1\n");

  SECTION("vacuum") {
    const nlohmann::ordered_json doc = cmd_vacuum(cfg).finish();
    CHECK_THAT(doc["results"]["T0"]["value"].get<double>(),
               WithinRel(0.3, 1e-12));
    CHECK(doc["results"]["g0"]["unit"] == "g/(cm2.s)");
    CHECK(doc["results"]["prefactor_C"]["value"].get<double>() ==
          6.579736267392906);
    CHECK(doc["results"].contains("mode_sum_T0"));
    CHECK(doc["results"].contains("t0_target"));
    CHECK(doc["conventions"]["dispersion"] == "omega = c k / n0");
    CHECK(doc["conventions"]["mode_density_model"] == "one-dimensional-axis");
  }
  SECTION("ledger lists all entries with provenance") {
    const nlohmann::ordered_json doc =
        cmd_ledger(cfg, ledger::LedgerMode::full).finish();
    CHECK(doc["results"]["net"]["value"].get<double>() == 0.0);
    REQUIRE(doc.contains("ledger_entries"));
    REQUIRE(doc["ledger_entries"].size() == 4);
    CHECK(doc["ledger_entries"][0]["label"] == "f1");
    CHECK(doc["ledger_entries"][0]["provenance"] == "bulk");
    CHECK(doc["ledger_entries"][2]["label"] == "f12");
    CHECK(doc["ledger_entries"][2]["provenance"] == "surface");
    CHECK(doc["ledger_entries"][3]["label"] == "f21");
  }
  SECTION("flow carries the discrepancy note") {
    const nlohmann::ordered_json doc = cmd_flow(cfg).finish();
    CHECK(has_note(doc, flow_discrepancy_note));
    // T0 a^2 / (4 eta L) with T0 = 0.3, a = 0.1, L = 200, eta = 0.01.
    CHECK_THAT(doc["results"]["U_vac"]["value"].get<double>(),
               WithinRel(3.75e-4, 1e-9));
  }
  SECTION("transient reports both ramp endpoints") {
    const nlohmann::ordered_json doc = cmd_transient(cfg).finish();
    CHECK(doc["results"]["delta_chi_initial"]["value"].get<double>() == 0.0);
    CHECK(doc["results"]["delta_chi_final"]["value"].get<double>() ==
          cfg.vacuum->delta_chi);
    CHECK(has_note(doc, macro::ramp_energy_note_text));
  }
  SECTION("audit verdict strings") {
    CHECK(cmd_audit(cfg, ledger::LedgerMode::naive)
              .finish()["results"]["verdict"]["value"] ==
          "first-law-violation");
    CHECK(cmd_audit(cfg, ledger::LedgerMode::full)
              .finish()["results"]["verdict"]["value"] == "consistent");
  }
  SECTION("mode stress closed and quadrature routes") {
    const nlohmann::ordered_json doc = cmd_mode_stress(cfg).finish();
    const double closed =
        doc["results"]["net_stress_closed"]["value"].get<double>();
    const double quad =
        doc["results"]["net_stress_quadrature"]["value"].get<double>();
    CHECK_THAT(quad, WithinRel(closed, 1e-9));
    CHECK(doc["results"]["net_stress_rel_diff"]["value"].get<double>() <=
          1e-9);
  }
}

TEST_CASE("sweep output is columnar and linear in lambda_c") {
  const RunConfig cfg = resolve(std::string(minimal_material) +
                                "[vacuum]\nlambda_c = 1e-8\n"
                                "delta_chi = 2e-4\n");
  const std::string text = sweep_lambda_c(cfg, 1e-8, 5e-8, 5);
  int header = 0;
  int rows = 0;
  std::istringstream in(text);
  std::string line;
  std::string first_col;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) {
      ++header;
      continue;
    }
    ++rows;
    if (rows == 1) first_col = line.substr(0, line.find('\t'));
  }
  CHECK(header == 2);
  CHECK(rows == 5);
  CHECK(first_col == "1e-08");
  CHECK_THROWS_AS(sweep_lambda_c(cfg, 0.0, 1e-8, 5), ConfigError);
  CHECK_THROWS_AS(sweep_lambda_c(cfg, 1e-8, 1e-7, 0), ConfigError);
}
