#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mevac/ledger.hpp"
#include "mevac/material.hpp"
#include "mevac/quantity.hpp"
#include "mevac/units.hpp"
#include "mevac/vacuum.hpp"

// Config ingestion. Line-oriented sections of key = value pairs, full-line
// # comments, one schema tag up front. All dimensioned inputs are converted
// to Gaussian right here; nothing downstream ever sees SI.

namespace mevac::cli {

inline constexpr std::string_view config_schema = "mevac-config/1";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  [[nodiscard]] const std::string* find(std::string_view key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

struct RawConfig {
  std::string schema;
  std::vector<RawSection> sections;

  [[nodiscard]] const RawSection* find(std::string_view name) const {
    for (const auto& s : sections) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_number(const std::string& section, const std::string& key,
                           const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("config: " + section + "." + key + ": cannot parse '" +
                      value + "' as a number");
  }
  return out;
}

inline bool parse_bool(const std::string& section, const std::string& key,
                       const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("config: " + section + "." + key +
                    ": expected true or false, got '" + value + "'");
}

}  // namespace detail

inline RawConfig parse_config_text(const std::string& text) {
  RawConfig cfg;
  RawSection* current = nullptr;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError("config: line " + std::to_string(lineno) +
                          ": malformed section header");
      }
      const std::string name = detail::trim(t.substr(1, t.size() - 2));
      if (cfg.find(name) != nullptr) {
        throw ConfigError("config: duplicate section [" + name + "]");
      }
      cfg.sections.push_back({name, {}});
      current = &cfg.sections.back();
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": empty key");
    }
    if (current == nullptr) {
      if (key != "schema") {
        throw ConfigError("config: key '" + key +
                          "' appears before any section (only the schema tag "
                          "may)");
      }
      cfg.schema = value;
      continue;
    }
    if (current->find(key) != nullptr) {
      throw ConfigError("config: duplicate key " + current->name + "." + key);
    }
    current->entries.emplace_back(key, value);
  }
  if (cfg.schema != config_schema) {
    throw ConfigError("config: missing or unsupported schema tag; expected "
                      "'schema = mevac-config/1' before the first section");
  }
  return cfg;
}

inline RawConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

struct VacuumSettings {
  Length lambda_c;    // cm
  double delta_chi;   // resolved, possibly back-solved
  bool from_target;   // true when delta_chi came from t0_target
  Stress t0_target;   // dyn/cm^2, meaningful when from_target
};

struct BeamSettings {
  double omega;  // rad/s
  double E0k;    // statvolt/cm
};

struct RadiometerSettings {
  Area vane_area;
  Length arm;
  PivotFriction gamma;
};

struct RunConfig {
  material::MaterialParams material;
  std::optional<VacuumSettings> vacuum;
  std::optional<ledger::Geometry> geometry;
  std::optional<BeamSettings> beam;
  std::optional<RadiometerSettings> radiometer;
  bool fields_steady = true;
  units::System input_units = units::System::gaussian;
  units::System output_units = units::System::gaussian;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
  nlohmann::ordered_json echo;

  // Material carrying the vacuum-sector susceptibility, split
  // antisymmetrically: chi_xy = +delta_chi/2, chi_yx = -delta_chi/2.
  [[nodiscard]] material::MaterialParams vacuum_material() const {
    const double half = vacuum->delta_chi / 2.0;
    return material.with_susceptibility({half, -half});
  }
};

namespace detail {

struct KeyChecker {
  const RawSection& sec;
  std::vector<std::string_view> known;

  void finish() const {
    for (const auto& [k, v] : sec.entries) {
      bool ok = false;
      for (const auto& name : known) {
        if (k == name) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        throw ConfigError("config: unknown key " + sec.name + "." + k);
      }
    }
  }
};

inline std::optional<double> opt_number(const RawSection& s,
                                        const std::string& key) {
  const std::string* v = s.find(key);
  if (v == nullptr) return std::nullopt;
  return parse_number(s.name, key, *v);
}

inline double req_number(const RawSection& s, const std::string& key) {
  const auto v = opt_number(s, key);
  if (!v) {
    throw ConfigError("config: missing required key " + s.name + "." + key);
  }
  return *v;
}

inline double ingest(double value, units::Dim d, units::System sys) {
  return units::from_system(value, d, sys);
}

}  // namespace detail

// Raw key-value text to a validated, all-Gaussian RunConfig.
inline RunConfig resolve_config(const RawConfig& raw) {
  using detail::ingest;
  using detail::req_number;
  using units::Dim;
  using units::System;

  static constexpr std::string_view known_sections[] = {
      "material", "vacuum", "geometry", "beam",
      "radiometer", "audit", "units", "notes"};
  for (const auto& s : raw.sections) {
    bool ok = false;
    for (const auto& name : known_sections) {
      if (s.name == name) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError("config: unknown section [" + s.name + "]");
    }
  }

  System input = System::gaussian;
  System output = System::gaussian;
  if (const RawSection* u = raw.find("units")) {
    detail::KeyChecker{*u, {"input", "output"}}.finish();
    auto parse_system = [&](const char* key) -> std::optional<System> {
      const std::string* v = u->find(key);
      if (v == nullptr) return std::nullopt;
      if (*v == "si") return System::si;
      if (*v == "gaussian") return System::gaussian;
      throw ConfigError(std::string("config: units.") + key +
                        ": expected si or gaussian, got '" + *v + "'");
    };
    input = parse_system("input").value_or(System::gaussian);
    output = parse_system("output").value_or(input);
  }

  const RawSection* mat = raw.find("material");
  if (mat == nullptr) {
    throw ConfigError("config: missing required section [material]");
  }
  detail::KeyChecker{*mat,
                     {"epsilon", "mu", "chi_xy", "chi_yx", "alpha",
                      "E_applied", "B_applied", "viscosity"}}
      .finish();
  const double epsilon = req_number(*mat, "epsilon");
  const double mu = req_number(*mat, "mu");
  const double viscosity =
      ingest(req_number(*mat, "viscosity"), Dim::viscosity, input);

  const bool has_chi =
      mat->find("chi_xy") != nullptr || mat->find("chi_yx") != nullptr;
  const bool has_induction = mat->find("alpha") != nullptr ||
                             mat->find("E_applied") != nullptr ||
                             mat->find("B_applied") != nullptr;
  if (has_chi == has_induction) {
    throw ConfigError(
        "config: material must contain exactly one of the explicit pair "
        "(chi_xy, chi_yx) or the induction triple (alpha, E_applied, "
        "B_applied); found " +
        std::string(has_chi ? "both" : "neither"));
  }
  material::MESusceptibility chi;
  if (has_chi) {
    chi.chi_xy = req_number(*mat, "chi_xy");
    chi.chi_yx = req_number(*mat, "chi_yx");
  } else {
    // alpha is always given in Gaussian 1/(statvolt*gauss); only the two
    // field magnitudes pass through the unit boundary.
    const material::MECoupling alpha(req_number(*mat, "alpha"));
    const EField E(
        ingest(req_number(*mat, "E_applied"), Dim::e_field, input));
    const BField B(
        ingest(req_number(*mat, "B_applied"), Dim::b_field, input));
    chi = material::induced_susceptibility(alpha, E, B);
  }

  RunConfig cfg{
      material::MaterialParams(epsilon, mu, chi, Viscosity(viscosity)),
      std::nullopt,
      std::nullopt,
      std::nullopt,
      std::nullopt,
      true,
      input,
      output,
      {},
      {},
      nlohmann::ordered_json::object()};

  for (const std::string& w : cfg.material.linearization_warnings()) {
    cfg.warnings.push_back("material: " + w);
  }

  if (const RawSection* vac = raw.find("vacuum")) {
    detail::KeyChecker{*vac, {"lambda_c", "delta_chi", "t0_target"}}.finish();
    const Length lambda_c(
        ingest(req_number(*vac, "lambda_c"), Dim::length, input));
    const auto dchi = detail::opt_number(*vac, "delta_chi");
    const auto target = detail::opt_number(*vac, "t0_target");
    if (dchi.has_value() == target.has_value()) {
      throw ConfigError(
          "config: vacuum must contain exactly one of delta_chi or "
          "t0_target; found " +
          std::string(dchi ? "both" : "neither"));
    }
    VacuumSettings v{lambda_c, 0.0, false, Stress(0.0)};
    if (dchi) {
      v.delta_chi = *dchi;
    } else {
      v.from_target = true;
      v.t0_target = Stress(ingest(*target, Dim::stress, input));
      v.delta_chi = vacuum::required_delta_chi(
          v.t0_target, lambda_c, vacuum::prefactor_C(cfg.material));
    }
    cfg.vacuum = v;
  }

  if (const RawSection* geo = raw.find("geometry")) {
    detail::KeyChecker{*geo, {"a", "L", "me_start", "me_end", "topology"}}
        .finish();
    const std::string* topo = geo->find("topology");
    if (topo == nullptr) {
      throw ConfigError("config: missing required key geometry.topology");
    }
    ledger::Topology topology;
    if (*topo == "open-tube") {
      topology = ledger::Topology::open_tube;
    } else if (*topo == "closed-loop") {
      topology = ledger::Topology::closed_loop;
    } else {
      throw ConfigError(
          "config: geometry.topology: expected open-tube or closed-loop, "
          "got '" +
          *topo + "'");
    }
    cfg.geometry.emplace(
        Length(ingest(req_number(*geo, "a"), Dim::length, input)),
        Length(ingest(req_number(*geo, "L"), Dim::length, input)),
        Length(ingest(req_number(*geo, "me_start"), Dim::length, input)),
        Length(ingest(req_number(*geo, "me_end"), Dim::length, input)),
        topology);
    if (cfg.geometry->me_segment_degenerate()) {
      cfg.warnings.push_back(
          "geometry: me_segment has zero length; surface entries will "
          "coincide");
    }
  }

  if (const RawSection* beam = raw.find("beam")) {
    detail::KeyChecker{*beam, {"omega", "E0k"}}.finish();
    cfg.beam = BeamSettings{
        req_number(*beam, "omega"),
        ingest(req_number(*beam, "E0k"), Dim::e_field, input)};
    if (!(cfg.beam->omega > 0.0)) {
      throw ConfigError("config: beam.omega must be > 0");
    }
    if (!(cfg.beam->E0k >= 0.0)) {
      throw ConfigError("config: beam.E0k must be >= 0");
    }
  }

  if (const RawSection* rad = raw.find("radiometer")) {
    detail::KeyChecker{*rad, {"vane_area", "arm", "gamma"}}.finish();
    cfg.radiometer = RadiometerSettings{
        Area(ingest(req_number(*rad, "vane_area"), Dim::area, input)),
        Length(ingest(req_number(*rad, "arm"), Dim::length, input)),
        PivotFriction(
            ingest(req_number(*rad, "gamma"), Dim::pivot_friction, input))};
  }

  if (const RawSection* audit = raw.find("audit")) {
    detail::KeyChecker{*audit, {"fields_steady"}}.finish();
    if (const std::string* v = audit->find("fields_steady")) {
      cfg.fields_steady = detail::parse_bool("audit", "fields_steady", *v);
    }
  }

  if (const RawSection* notes = raw.find("notes")) {
    for (const auto& [k, v] : notes->entries) cfg.notes.push_back(v);
  }

  for (const auto& s : raw.sections) {
    nlohmann::ordered_json sec = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.entries) sec[k] = v;
    cfg.echo[s.name] = sec;
  }

  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  return resolve_config(load_config_file(path));
}

}  // namespace mevac::cli
