#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "fgate/config.hpp"
#include "fgate/error.hpp"
#include "fgate/fieldgen.hpp"
#include "fgate/io.hpp"
#include "fgate/simulation.hpp"

namespace fgate {

enum class SweepParameter { r, Bz, Bg1, Bg2, Bl, I, J0 };

inline SweepParameter parse_sweep_parameter(std::string_view s) {
  s = io::trim(s);
  if (s == "r") return SweepParameter::r;
  if (s == "Bz") return SweepParameter::Bz;
  if (s == "Bg1") return SweepParameter::Bg1;
  if (s == "Bg2") return SweepParameter::Bg2;
  if (s == "Bl") return SweepParameter::Bl;
  if (s == "I") return SweepParameter::I;
  if (s == "J0") return SweepParameter::J0;
  throw Error(ErrorCode::SpecError, "unknown sweep parameter '" + std::string(s) + "'");
}

struct SweepSpec {
  SweepParameter parameter = SweepParameter::r;
  std::vector<double> values;
  ConfigSource base;
  // Used only when sweeping the wire current I.
  WirePair wires;
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Points from..to; `log` spacing needs both ends positive.
inline std::vector<double> sweep_range(double from, double to, std::size_t points, bool log_scale) {
  if (points < 2) throw Error(ErrorCode::SpecError, "a sweep needs at least 2 points");
  if (log_scale && !(from > 0 && to > 0)) throw Error(ErrorCode::SpecError, "log sweep needs positive bounds");
  std::vector<double> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(points - 1);
    out.push_back(log_scale ? std::exp(std::log(from) + f * (std::log(to) - std::log(from)))
                            : from + f * (to - from));
  }
  out.front() = from;
  out.back() = to;
  return out;
}

/// Sweep file: base config keys plus sweep_parameter and either
/// sweep_values or sweep_from/sweep_to/sweep_points[/sweep_scale].
/// Sweeping I also needs wire_d_m, wire_rho_m, x1_m, x2_m.
inline SweepSpec read_sweep(std::istream& in) {
  auto kv = io::KeyValues::parse(in);
  SweepSpec spec;
  auto param = kv.take("sweep_parameter");
  if (!param) throw Error(ErrorCode::SpecError, "sweep_parameter is required");
  spec.parameter = parse_sweep_parameter(*param);

  if (auto v = kv.take("sweep_values")) {
    spec.values = io::parse_list(*v);
    if (kv.has("sweep_from") || kv.has("sweep_to") || kv.has("sweep_points"))
      throw Error(ErrorCode::SpecError, "give either sweep_values or a sweep range, not both");
  } else {
    auto from = kv.take("sweep_from");
    auto to = kv.take("sweep_to");
    auto points = kv.take("sweep_points");
    if (!from || !to || !points) throw Error(ErrorCode::SpecError, "sweep needs sweep_values or from/to/points");
    bool log_scale = false;
    if (auto scale = kv.take("sweep_scale")) {
      const auto s = io::trim(*scale);
      if (s == "log")
        log_scale = true;
      else if (s != "linear")
        throw Error(ErrorCode::SpecError, "sweep_scale must be linear or log");
    }
    spec.values = sweep_range(io::parse_double(*from), io::parse_double(*to), io::parse_count(*points), log_scale);
  }
  if (spec.values.size() < 2) throw Error(ErrorCode::SpecError, "a sweep needs at least 2 points");

  if (auto v = kv.take("wire_d_m")) spec.wires.separation = io::parse_double(*v);
  if (auto v = kv.take("wire_rho_m")) spec.wires.radius = io::parse_double(*v);
  const auto x1 = kv.take("x1_m");
  const auto x2 = kv.take("x2_m");
  if (x1) spec.x1 = io::parse_double(*x1);
  if (x2) spec.x2 = io::parse_double(*x2);
  if (spec.parameter == SweepParameter::I && (!x1 || !x2))
    throw Error(ErrorCode::SpecError, "sweeping I needs x1_m and x2_m");

  spec.base = take_config(kv);
  kv.expect_empty();
  return spec;
}

/// Base config with the swept parameter set to `value`.
inline SimulationConfig sweep_point(const SweepSpec& spec, double value) {
  ConfigSource src = spec.base;
  SimulationConfig& c = src.config;
  switch (spec.parameter) {
    case SweepParameter::r: c.r = value; break;
    case SweepParameter::Bz: c.Bz1 = c.Bz2 = value; break;
    case SweepParameter::Bg1: c.Bg1 = value; break;
    case SweepParameter::Bg2: c.Bg2 = value; break;
    case SweepParameter::Bl: c.Bl1 = c.Bl2 = value; break;
    case SweepParameter::J0: c.J0 = value; break;
    case SweepParameter::I: {
      WirePair wires = spec.wires;
      wires.current = value;
      c.Bg1 = gradient_field(wires, spec.x1, c.constants);
      c.Bg2 = gradient_field(wires, spec.x2, c.constants);
      break;
    }
  }
  return src.resolved();
}

struct SweepRow {
  double value;
  std::string status;  // "ok" or an error code name
  std::optional<GateResult> gate;
};

inline SweepRow run_sweep_point(const SweepSpec& spec, double value) {
  try {
    const auto cfg = validate_or_throw(sweep_point(spec, value));
    return {value, "ok", analyze_gate(cfg)};
  } catch (const Error& e) {
    return {value, std::string(to_string(e.code())), std::nullopt};
  }
}

/// Runs every point; rows come back in spec order whatever the job count.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned jobs = 1) {
  std::vector<SweepRow> rows(spec.values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) rows[i] = run_sweep_point(spec, spec.values[i]);
  };
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1)));
  if (jobs == 1) {
    worker();
    return rows;
  }
  std::vector<std::jthread> pool;
  pool.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  pool.clear();
  return rows;
}

inline constexpr std::string_view kSweepHeader = "param_value,tau_s,concurrence_at_tau,eof_at_tau,ops_budget,status";

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  using io::format_double;
  out << kSweepHeader << '\n';
  for (const auto& row : rows) {
    out << format_double(row.value) << ',';
    if (row.gate)
      out << format_double(row.gate->tau) << ',' << format_double(row.gate->concurrence_at_tau) << ','
          << format_double(row.gate->eof_at_tau) << ',' << row.gate->ops_budget;
    else
      out << ",,,";
    out << ',' << row.status << '\n';
  }
}

}  // namespace fgate
