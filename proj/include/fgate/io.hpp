#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "fgate/config.hpp"
#include "fgate/error.hpp"
#include "fgate/fieldgen.hpp"
#include "fgate/hamiltonian.hpp"
#include "fgate/propagator.hpp"
#include "fgate/simulation.hpp"

namespace fgate {

// Step policy applied when a config omits dt_s: 0.005 rad per step keeps RK4
// norm drift far below the 1e-8 band over a 10 ns gate.
inline constexpr double kConfigPhasePerStep = 0.005;

namespace io {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

/// Locale-independent parse of a full token.
inline double parse_double(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(token) + "'");
  return value;
}

inline std::size_t parse_count(std::string_view token) {
  token = trim(token);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw Error(ErrorCode::ParseError, "not a count: '" + std::string(token) + "'");
  return value;
}

inline std::vector<double> parse_list(std::string_view token) {
  std::vector<double> out;
  while (true) {
    const auto comma = token.find(',');
    out.push_back(parse_double(token.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    token.remove_prefix(comma + 1);
  }
  return out;
}

/// Shortest representation that round-trips.
inline std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

/// `key = value` lines; `#` starts a comment. Duplicate keys are rejected.
class KeyValues {
 public:
  static KeyValues parse(std::istream& in) {
    KeyValues kv;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      std::string_view view(line);
      if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
      view = trim(view);
      if (view.empty()) continue;
      const auto eq = view.find('=');
      if (eq == std::string_view::npos)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": expected key = value");
      std::string key(trim(view.substr(0, eq)));
      std::string value(trim(view.substr(eq + 1)));
      if (key.empty()) throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": empty key");
      if (!kv.values_.emplace(key, std::move(value)).second)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": duplicate key '" + key + "'");
    }
    return kv;
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  /// Removes and returns a value, so leftovers can be reported as unknown.
  std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string v = std::move(it->second);
    values_.erase(it);
    return v;
  }

  void expect_empty() const {
    if (!values_.empty()) throw Error(ErrorCode::ParseError, "unknown key '" + values_.begin()->first + "'");
  }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace io

/// A parsed config plus whether the step was given explicitly.
struct ConfigSource {
  SimulationConfig config;
  bool dt_given = false;

  /// Config with dt resolved; a missing dt_s follows kConfigPhasePerStep.
  SimulationConfig resolved() const {
    SimulationConfig out = config;
    if (!dt_given && out.r > 0 && std::isfinite(out.r)) {
      const ResonancePair res = resonance_frequencies(out);
      out.dt = recommended_step(hamiltonian_scale(out, res), kConfigPhasePerStep);
    }
    return out;
  }
};

inline Mode parse_mode(std::string_view s) {
  s = io::trim(s);
  if (s == "static") return Mode::Static;
  if (s == "driven") return Mode::Driven;
  throw Error(ErrorCode::ParseError, "mode must be static or driven, got '" + std::string(s) + "'");
}

inline StateVector parse_state(std::string_view s) {
  const auto values = io::parse_list(s);
  if (values.size() != 8) throw Error(ErrorCode::ParseError, "initial_state needs 8 reals (re,im x 4)");
  StateVector psi;
  for (int i = 0; i < 4; ++i) psi(i) = Complex(values[2 * i], values[2 * i + 1]);
  return psi;
}

/// Consumes the simulation keys from `kv`; other keys are left in place.
inline ConfigSource take_config(io::KeyValues& kv) {
  ConfigSource src;
  SimulationConfig& c = src.config;
  auto number = [&](const char* key, double& field) {
    if (auto v = kv.take(key)) field = io::parse_double(*v);
  };
  number("r_m", c.r);
  number("Bz1_T", c.Bz1);
  number("Bz2_T", c.Bz2);
  number("Bg1_T", c.Bg1);
  number("Bg2_T", c.Bg2);
  number("Bl1_T", c.Bl1);
  number("Bl2_T", c.Bl2);
  number("J0_rad_s", c.J0);
  number("t_max_s", c.t_max);
  number("T2_s", c.T2);
  number("T1_s", c.T1);
  number("norm_tolerance", c.norm_tolerance);
  if (auto v = kv.take("dt_s")) {
    c.dt = io::parse_double(*v);
    src.dt_given = true;
  }
  if (auto v = kv.take("mode")) c.mode = parse_mode(*v);
  if (auto v = kv.take("initial_state")) c.initial_state = parse_state(*v);
  if (auto v = kv.take("samples")) c.samples = io::parse_count(*v);
  return src;
}

inline ConfigSource read_config(std::istream& in) {
  auto kv = io::KeyValues::parse(in);
  auto src = take_config(kv);
  kv.expect_empty();
  return src;
}

inline void write_config(std::ostream& out, const SimulationConfig& c) {
  using io::format_double;
  out << "r_m = " << format_double(c.r) << '\n'
      << "Bz1_T = " << format_double(c.Bz1) << '\n'
      << "Bz2_T = " << format_double(c.Bz2) << '\n'
      << "Bg1_T = " << format_double(c.Bg1) << '\n'
      << "Bg2_T = " << format_double(c.Bg2) << '\n'
      << "Bl1_T = " << format_double(c.Bl1) << '\n'
      << "Bl2_T = " << format_double(c.Bl2) << '\n'
      << "J0_rad_s = " << format_double(c.J0) << '\n'
      << "mode = " << to_string(c.mode) << '\n'
      << "t_max_s = " << format_double(c.t_max) << '\n'
      << "dt_s = " << format_double(c.dt) << '\n'
      << "T2_s = " << format_double(c.T2) << '\n'
      << "T1_s = " << format_double(c.T1) << '\n'
      << "norm_tolerance = " << format_double(c.norm_tolerance) << '\n'
      << "samples = " << c.samples << '\n'
      << "initial_state = ";
  for (int i = 0; i < 4; ++i)
    out << (i ? "," : "") << format_double(c.initial_state(i).real()) << ',' << format_double(c.initial_state(i).imag());
  out << '\n';
}

/// Wire keys: I_A, d_m, rho_m.
inline WirePair take_wires(io::KeyValues& kv, WirePair wires = {}) {
  if (auto v = kv.take("I_A")) wires.current = io::parse_double(*v);
  if (auto v = kv.take("d_m")) wires.separation = io::parse_double(*v);
  if (auto v = kv.take("rho_m")) wires.radius = io::parse_double(*v);
  return wires;
}

inline WirePair read_wires(std::istream& in) {
  auto kv = io::KeyValues::parse(in);
  auto wires = take_wires(kv);
  kv.expect_empty();
  check_wires(wires);
  return wires;
}

inline constexpr std::string_view kTrajectoryHeader =
    "t_s,re_c1,im_c1,re_c2,im_c2,re_c3,im_c3,re_c4,im_c4,theta_rad,concurrence,norm";

inline void write_trajectory_csv(std::ostream& out, const SimulationOutput& sim) {
  using io::format_double;
  out << kTrajectoryHeader << '\n';
  const auto& traj = sim.trajectory;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << format_double(traj.times[k]);
    for (int i = 0; i < 4; ++i)
      out << ',' << format_double(traj.states[k](i).real()) << ',' << format_double(traj.states[k](i).imag());
    out << ',' << format_double(sim.phases.theta[k]) << ',' << format_double(sim.concurrence[k]) << ','
        << format_double(traj.norms[k]) << '\n';
  }
}

inline void write_field_profile_csv(std::ostream& out, const std::vector<FieldSample>& profile) {
  out << "x_m,Bg_T\n";
  for (const auto& s : profile) out << io::format_double(s.x) << ',' << io::format_double(s.field) << '\n';
}

inline void write_summary(std::ostream& out, const SimulationConfig& cfg, const SimulationOutput& sim) {
  using io::format_double;
  out << "mode = " << to_string(cfg.mode) << '\n'
      << "omega1_rad_s = " << format_double(sim.resonances.omega1) << '\n'
      << "omega2_rad_s = " << format_double(sim.resonances.omega2) << '\n'
      << "max_norm_deviation = " << format_double(sim.trajectory.max_norm_deviation()) << '\n';
  if (!sim.gate) {
    out << "status = NoCrossing\n"
        << "theta_at_t_max_rad = " << format_double(sim.phases.theta.empty() ? 0.0 : sim.phases.theta.back()) << '\n';
    return;
  }
  const GateResult& g = *sim.gate;
  out << "status = ok\n"
      << "tau_s = " << format_double(g.tau) << '\n'
      << "theta_at_tau_rad = " << format_double(g.theta_at_tau) << '\n'
      << "concurrence_at_tau = " << format_double(g.concurrence_at_tau) << '\n'
      << "eof_at_tau = " << format_double(g.eof_at_tau) << '\n'
      << "ops_budget = " << g.ops_budget << '\n'
      << "s1_0_rad = " << format_double(g.correction.s1_0) << '\n'
      << "s1_1_rad = " << format_double(g.correction.s1_1) << '\n'
      << "s2_0_rad = " << format_double(g.correction.s2_0) << '\n'
      << "s2_1_rad = " << format_double(g.correction.s2_1) << '\n';
}

}  // namespace fgate
