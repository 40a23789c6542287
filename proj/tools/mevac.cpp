// mevac: batch front end for the magnetoelectric vacuum-stress pipeline.
//
// One logical run per invocation. stdout carries the human-readable table
// (or columnar sweep data); --out writes the machine report. Exit codes:
// 0 success, 1 usage error, 2 config/validation error, 3 warnings under
// --strict.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mevac/mevac.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_config = 2;
constexpr int exit_strict = 3;

struct CommonArgs {
  std::string config_path;
  std::string mode = "full";
  std::string units;  // empty: keep the config's output system
  std::string out_path;
  bool strict = false;
};

void add_common(CLI::App* sub, CommonArgs& args, bool with_mode) {
  sub->add_option("--config", args.config_path, "run configuration file")
      ->required();
  if (with_mode) {
    sub->add_option("--mode", args.mode, "ledger mode")
        ->check(CLI::IsMember({"naive", "full"}))
        ->capture_default_str();
  }
  sub->add_option("--units", args.units, "override the output unit system")
      ->check(CLI::IsMember({"si", "gaussian"}));
  sub->add_flag("--strict", args.strict, "treat warnings as errors (exit 3)");
  sub->add_option("--out", args.out_path, "write the machine report here");
}

mevac::cli::RunConfig load(const CommonArgs& args) {
  mevac::cli::RunConfig cfg = mevac::cli::load_run_config(args.config_path);
  if (args.units == "si") cfg.output_units = mevac::units::System::si;
  if (args.units == "gaussian") {
    cfg.output_units = mevac::units::System::gaussian;
  }
  return cfg;
}

mevac::ledger::LedgerMode ledger_mode(const CommonArgs& args) {
  return args.mode == "naive" ? mevac::ledger::LedgerMode::naive
                              : mevac::ledger::LedgerMode::full;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw mevac::cli::ConfigError("cannot open output file: " + path);
  }
  out << text;
}

int emit(const mevac::cli::ReportBuilder& rb, const CommonArgs& args) {
  std::cout << rb.to_table();
  if (!args.out_path.empty()) write_file(args.out_path, rb.to_json());
  if (args.strict && !rb.warnings().empty()) return exit_strict;
  return exit_ok;
}

// START:STOP:N after a mandatory "lambda_c=" prefix.
void parse_sweep(const std::string& spec, double& start, double& stop,
                 long& n) {
  const std::string prefix = "lambda_c=";
  const auto fail = [&spec]() {
    throw mevac::cli::ConfigError(
        "sweep: expected lambda_c=START:STOP:N, got '" + spec + "'");
  };
  if (spec.rfind(prefix, 0) != 0) fail();
  const std::string body = spec.substr(prefix.size());
  const auto c1 = body.find(':');
  const auto c2 = body.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) fail();
  try {
    std::size_t used = 0;
    start = std::stod(body.substr(0, c1), &used);
    if (used != c1) fail();
    const std::string mid = body.substr(c1 + 1, c2 - c1 - 1);
    stop = std::stod(mid, &used);
    if (used != mid.size()) fail();
    const std::string tail = body.substr(c2 + 1);
    n = std::stol(tail, &used);
    if (used != tail.size()) fail();
  } catch (const mevac::cli::ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-vacuum momentum transfer in magnetoelectric media"};
  app.require_subcommand(1);

  CommonArgs mode_stress_args;
  CLI::App* mode_stress =
      app.add_subcommand("mode-stress", "classical-beam net mode stress");
  add_common(mode_stress, mode_stress_args, false);

  CommonArgs vacuum_args;
  std::string sweep_spec;
  CLI::App* vacuum =
      app.add_subcommand("vacuum", "cutoff-regularized vacuum stress");
  add_common(vacuum, vacuum_args, false);
  vacuum->add_option("--sweep", sweep_spec,
                     "emit columnar data for lambda_c=START:STOP:N");

  CommonArgs ledger_args;
  CLI::App* ledger =
      app.add_subcommand("ledger", "boundary-complete force ledger");
  add_common(ledger, ledger_args, true);

  CommonArgs flow_args;
  CLI::App* flow = app.add_subcommand("flow", "Poiseuille loop-flow estimate");
  add_common(flow, flow_args, false);

  CommonArgs radiometer_args;
  CLI::App* radiometer =
      app.add_subcommand("radiometer", "vane torque and spin-up estimate");
  add_common(radiometer, radiometer_args, false);

  CommonArgs transient_args;
  CLI::App* transient =
      app.add_subcommand("transient", "susceptibility-ramp impulse");
  add_common(transient, transient_args, false);

  CommonArgs audit_args;
  CLI::App* audit =
      app.add_subcommand("audit", "first-law consistency audit");
  add_common(audit, audit_args, true);

  double convert_value = 0.0;
  std::string convert_from;
  std::string convert_to;
  CLI::App* convert =
      app.add_subcommand("convert", "convert between pinned units");
  convert->add_option("value", convert_value, "numeric value")->required();
  convert->add_option("from", convert_from, "source unit")->required();
  convert->add_option("to", convert_to, "target unit")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*mode_stress) {
      return emit(mevac::cli::cmd_mode_stress(load(mode_stress_args)),
                  mode_stress_args);
    }
    if (*vacuum) {
      const mevac::cli::RunConfig cfg = load(vacuum_args);
      if (!sweep_spec.empty()) {
        double start = 0.0;
        double stop = 0.0;
        long n = 0;
        parse_sweep(sweep_spec, start, stop, n);
        const std::string data =
            mevac::cli::sweep_lambda_c(cfg, start, stop, n);
        std::cout << data;
        if (!vacuum_args.out_path.empty()) {
          write_file(vacuum_args.out_path, data);
        }
        return exit_ok;
      }
      return emit(mevac::cli::cmd_vacuum(cfg), vacuum_args);
    }
    if (*ledger) {
      return emit(mevac::cli::cmd_ledger(load(ledger_args),
                                         ledger_mode(ledger_args)),
                  ledger_args);
    }
    if (*flow) return emit(mevac::cli::cmd_flow(load(flow_args)), flow_args);
    if (*radiometer) {
      return emit(mevac::cli::cmd_radiometer(load(radiometer_args)),
                  radiometer_args);
    }
    if (*transient) {
      return emit(mevac::cli::cmd_transient(load(transient_args)),
                  transient_args);
    }
    if (*audit) {
      return emit(
          mevac::cli::cmd_audit(load(audit_args), ledger_mode(audit_args)),
          audit_args);
    }
    if (*convert) {
      const double converted =
          mevac::units::convert_units(convert_value, convert_from,
                                      convert_to);
      std::cout << mevac::cli::repr(converted) << " " << convert_to << "\n";
      return exit_ok;
    }
  } catch (const mevac::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  }
  return exit_ok;
}
