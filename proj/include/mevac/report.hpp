#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mevac/config.hpp"
#include "mevac/constants.hpp"
#include "mevac/units.hpp"

// Machine-readable report records plus the aligned human table. One record
// per CLI invocation; every numeric output carries an explicit unit string.
// Serialization is deterministic: insertion-ordered JSON, shortest
// round-trip float formatting, fixed two-space indent.

namespace mevac::cli {

inline constexpr std::string_view report_schema = "mevac-report/1";

// Shortest round-trip decimal form; used for the human table.
inline std::string repr(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

class ReportBuilder {
 public:
  ReportBuilder(std::string command, const RunConfig& cfg)
      : system_(cfg.output_units) {
    doc_["schema"] = std::string(report_schema);
    doc_["command"] = std::move(command);
    doc_["config"] = cfg.echo;
    doc_["results"] = nlohmann::ordered_json::object();
    doc_["conventions"] = nlohmann::ordered_json::object();
    conventions()["unit_system"] =
        system_ == units::System::si ? "si" : "gaussian";
    conventions()["internal_units"] = "gaussian";
    conventions()["constants"] = {{"c_cm_per_s", c_light},
                                  {"hbar_erg_s", hbar}};
    for (const std::string& w : cfg.warnings) warning(w);
    for (const std::string& n : cfg.notes) note(n);
  }

  // Dimensioned result: the Gaussian value crosses the unit boundary here.
  ReportBuilder& result(const std::string& name, double gaussian_value,
                        units::Dim dim) {
    const double v = units::to_system(gaussian_value, dim, system_);
    doc_["results"][name] = {
        {"value", v},
        {"unit", std::string(units::unit_name(dim, system_))}};
    rows_.push_back({name, repr(v),
                     std::string(units::unit_name(dim, system_))});
    return *this;
  }

  ReportBuilder& result_dimensionless(const std::string& name, double v) {
    doc_["results"][name] = {{"value", v}, {"unit", "1"}};
    rows_.push_back({name, repr(v), "1"});
    return *this;
  }

  ReportBuilder& result_text(const std::string& name,
                             const std::string& text) {
    doc_["results"][name] = {{"value", text}, {"unit", "text"}};
    rows_.push_back({name, text, ""});
    return *this;
  }

  nlohmann::ordered_json& conventions() { return doc_["conventions"]; }

  // Structured payloads outside the flat results map (entry lists and the
  // like); not rendered in the table.
  ReportBuilder& extra(const std::string& key, nlohmann::ordered_json j) {
    doc_[key] = std::move(j);
    return *this;
  }

  ReportBuilder& warning(const std::string& w) {
    warnings_.push_back(w);
    return *this;
  }

  ReportBuilder& note(const std::string& n) {
    notes_.push_back(n);
    return *this;
  }

  [[nodiscard]] const std::vector<std::string>& warnings() const {
    return warnings_;
  }

  [[nodiscard]] nlohmann::ordered_json finish() const {
    nlohmann::ordered_json out = doc_;
    out["warnings"] = warnings_;
    out["notes"] = notes_;
    return out;
  }

  [[nodiscard]] std::string to_json() const { return finish().dump(2) + "\n"; }

  [[nodiscard]] std::string to_table() const {
    std::size_t name_w = 4;
    std::size_t value_w = 5;
    for (const Row& r : rows_) {
      name_w = std::max(name_w, r.name.size());
      value_w = std::max(value_w, r.value.size());
    }
    std::string out;
    out += "command: " + doc_["command"].get<std::string>() + "\n";
    for (const Row& r : rows_) {
      out += "  " + pad(r.name, name_w) + "  " + pad(r.value, value_w) +
             "  " + r.unit + "\n";
    }
    for (const std::string& w : warnings_) out += "warning: " + w + "\n";
    for (const std::string& n : notes_) out += "note: " + n + "\n";
    return out;
  }

 private:
  struct Row {
    std::string name;
    std::string value;
    std::string unit;
  };

  static std::string pad(const std::string& s, std::size_t w) {
    std::string out = s;
    out.resize(std::max(w, s.size()), ' ');
    return out;
  }

  units::System system_;
  nlohmann::ordered_json doc_;
  std::vector<Row> rows_;
  std::vector<std::string> warnings_;
  std::vector<std::string> notes_;
};

}  // namespace mevac::cli
