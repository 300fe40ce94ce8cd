// Command-line front end for the two-spin phase gate simulator.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fgate/fgate.hpp"

namespace fs = std::filesystem;
using namespace fgate;

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kNoCrossing = 2, kNumericalFailure = 3 };

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoCrossing: return kNoCrossing;
    case ErrorCode::NormDrift:
    case ErrorCode::UndefinedPhase:
    case ErrorCode::NonHermitianInput:
    case ErrorCode::ZeroState:
    case ErrorCode::OutOfRange: return kNumericalFailure;
    default: return kConfigError;
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidValue, "cannot write " + path.string());
  return out;
}

ValidatedConfig load_config(const std::string& path) {
  auto in = open_input(path);
  return validate_or_throw(read_config(in).resolved());
}

void write_manifest(const fs::path& dir, const std::string& input, const SimulationConfig& cfg,
                    const std::vector<fs::path>& outputs, double seconds) {
  auto out = open_output(dir / "manifest.txt");
  out << "# run manifest\n"
      << "engine_version = " << kVersion << '\n'
      << "input = " << input << '\n'
      << "mode = " << to_string(cfg.mode) << '\n';
  for (const auto& p : outputs) out << "output = " << p.string() << '\n';
  out << "wall_clock_s = " << io::format_double(seconds) << '\n' << "# config snapshot\n";
  write_config(out, cfg);
}

int cmd_simulate(const std::string& config_path, const fs::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = load_config(config_path);
  const auto sim = simulate(cfg);
  fs::create_directories(out_dir);
  {
    auto csv = open_output(out_dir / "trajectory.csv");
    write_trajectory_csv(csv, sim);
  }
  std::ostringstream summary;
  write_summary(summary, cfg.get(), sim);
  std::cout << summary.str();
  {
    auto txt = open_output(out_dir / "summary.txt");
    txt << summary.str();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(out_dir, config_path, cfg.get(), {out_dir / "trajectory.csv", out_dir / "summary.txt"}, seconds);
  return sim.gate ? kOk : kNoCrossing;
}

int cmd_gate_time(const std::string& config_path) {
  const auto cfg = load_config(config_path);
  const auto sim = simulate(cfg);
  write_summary(std::cout, cfg.get(), sim);
  return sim.gate ? kOk : kNoCrossing;
}

int cmd_sweep(const std::string& spec_path, const fs::path& out_path, unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  auto in = open_input(spec_path);
  const SweepSpec spec = read_sweep(in);
  const auto rows = run_sweep(spec, jobs);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  {
    auto csv = open_output(out_path);
    write_sweep_csv(csv, rows);
  }
  write_sweep_csv(std::cout, rows);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const fs::path dir = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
  write_manifest(dir, spec_path, spec.base.resolved(), {out_path}, seconds);
  return kOk;
}

int cmd_field_profile(const std::string& wires_path, double from, double to, std::size_t points,
                      const std::string& out_path) {
  auto in = open_input(wires_path);
  const WirePair wires = read_wires(in);
  if (!wires.current_in_feasible_band())
    std::cerr << "warning: |I| = " << std::abs(wires.current) << " A is outside the 0.1-0.6 A feasibility band\n";
  const auto profile = field_profile(wires, from, to, points);
  if (out_path.empty()) {
    write_field_profile_csv(std::cout, profile);
  } else {
    auto out = open_output(out_path);
    write_field_profile_csv(out, profile);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-spin endohedral fullerene phase gate simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  auto* simulate_cmd = app.add_subcommand("simulate", "Propagate a config, write trajectory.csv and summary.txt");
  simulate_cmd->add_option("config", config_path, "key = value config file")->required();
  simulate_cmd->add_option("--out", out_dir, "Output directory");

  auto* gate_cmd = app.add_subcommand("gate-time", "Print the gate summary only");
  gate_cmd->add_option("config", config_path, "key = value config file")->required();

  std::string spec_path;
  std::string sweep_out = "sweep.csv";
  unsigned jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep_cmd->add_option("spec", spec_path, "Sweep file")->required();
  sweep_cmd->add_option("--out", sweep_out, "Results CSV path");
  sweep_cmd->add_option("--jobs", jobs, "Concurrent sweep points")->check(CLI::PositiveNumber);

  std::string wires_path;
  double from = 0.0;
  double to = 0.0;
  std::size_t points = 0;
  std::string profile_out;
  auto* field_cmd = app.add_subcommand("field-profile", "Tabulate the wire-pair addressing field");
  field_cmd->add_option("wires", wires_path, "Wire config (I_A, d_m, rho_m)")->required();
  field_cmd->add_option("--from", from, "First x (m)")->required();
  field_cmd->add_option("--to", to, "Last x (m)")->required();
  field_cmd->add_option("--points", points, "Grid size")->required();
  field_cmd->add_option("--out", profile_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*simulate_cmd) return cmd_simulate(config_path, out_dir);
    if (*gate_cmd) return cmd_gate_time(config_path);
    if (*sweep_cmd) return cmd_sweep(spec_path, sweep_out, jobs);
    if (*field_cmd) return cmd_field_profile(wires_path, from, to, points, profile_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
