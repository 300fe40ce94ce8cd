#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fgate/constants.hpp"
#include "fgate/error.hpp"

namespace fgate {

using Complex = std::complex<double>;

/// Amplitudes c1..c4 over the basis |00>, |01>, |10>, |11> (qubit 1 is the left factor).
using StateVector = Eigen::Vector4cd;

enum class Mode { Static, Driven };

inline std::string_view to_string(Mode mode) { return mode == Mode::Static ? "static" : "driven"; }

/// Product state (|0>+|1>)(|0>+|1>)/2.
inline StateVector default_initial_state() { return StateVector::Constant(Complex(0.5, 0.0)); }

/// Physical parameters plus numerical controls. Fields in SI units, J0 in rad/s.
struct SimulationConfig {
  double r = 1.14e-9;
  double Bz1 = 0.1;
  double Bz2 = 0.1;
  double Bg1 = 6.08e-5;
  double Bg2 = -6.08e-5;
  double Bl1 = 0.0;
  double Bl2 = 0.0;
  double J0 = 0.0;
  StateVector initial_state = default_initial_state();
  double t_max = 12e-9;
  double dt = 2.5e-13;
  Mode mode = Mode::Static;

  double T2 = 20e-6;
  double T1 = 100e-6;  // metadata only

  double norm_tolerance = 1e-8;
  // Target number of stored samples; the integration step is independent of it.
  std::size_t samples = 10000;

  PhysicalConstants constants = kDefaultConstants;
};

struct ConfigIssue {
  ErrorCode code;
  std::string message;
};

struct ValidationResult;

/// A configuration that passed validate(); immutable afterwards.
class ValidatedConfig {
 public:
  const SimulationConfig& get() const { return cfg_; }
  const SimulationConfig* operator->() const { return &cfg_; }
  operator const SimulationConfig&() const { return cfg_; }

 private:
  friend ValidationResult validate(const SimulationConfig&);
  explicit ValidatedConfig(SimulationConfig cfg) : cfg_(std::move(cfg)) {}
  SimulationConfig cfg_;
};

struct ValidationResult {
  std::optional<ValidatedConfig> config;
  std::vector<ConfigIssue> errors;

  bool ok() const { return errors.empty(); }
};

inline constexpr double kMinRenormalizableNorm = 1e-6;

/// Checks every invariant and collects all violations. On success the
/// initial state is renormalized and static mode zeroes the drive.
inline ValidationResult validate(const SimulationConfig& in) {
  ValidationResult result;
  auto fail = [&](ErrorCode code, std::string msg) { result.errors.push_back({code, std::move(msg)}); };

  const double scalars[] = {in.r, in.Bz1, in.Bz2, in.Bg1, in.Bg2, in.Bl1, in.Bl2, in.J0, in.t_max, in.dt, in.T2};
  for (double v : scalars) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::InvalidValue, "non-finite parameter");
      break;
    }
  }
  if (!(in.r > 0)) fail(ErrorCode::NonPositiveDistance, "r must be > 0");
  if (!(in.t_max > 0)) fail(ErrorCode::NonPositiveHorizon, "t_max must be > 0");
  if (!(in.dt > 0)) fail(ErrorCode::NonPositiveStep, "dt must be > 0");
  if (in.dt > 0 && in.t_max > 0 && in.dt > in.t_max / 100.0)
    fail(ErrorCode::StepTooCoarse, "dt must be <= t_max / 100");
  if (!(in.T2 > 0)) fail(ErrorCode::InvalidValue, "T2 must be > 0");
  if (!(in.norm_tolerance > 0)) fail(ErrorCode::InvalidValue, "norm_tolerance must be > 0");
  if (in.samples < 2) fail(ErrorCode::InvalidValue, "samples must be >= 2");
  if (!in.constants.valid()) fail(ErrorCode::InvalidValue, "physical constants must be positive");

  const bool finite_state = in.initial_state.allFinite();
  const double norm = finite_state ? in.initial_state.norm() : 0.0;
  if (!finite_state || norm < kMinRenormalizableNorm)
    fail(ErrorCode::NonUnitInitialState, "initial state cannot be normalized");

  if (!result.errors.empty()) return result;

  SimulationConfig out = in;
  // Leave states already normalized to within a few ulps untouched so validate is idempotent.
  if (std::abs(norm - 1.0) > 1e-14) out.initial_state /= norm;
  if (out.mode == Mode::Static) {
    out.Bl1 = 0.0;
    out.Bl2 = 0.0;
  }
  result.config = ValidatedConfig(std::move(out));
  return result;
}

inline ValidatedConfig validate_or_throw(const SimulationConfig& in) {
  auto result = validate(in);
  if (!result.ok()) {
    std::string msg;
    for (const auto& e : result.errors) {
      if (!msg.empty()) msg += "; ";
      msg += std::string(to_string(e.code)) + " (" + e.message + ")";
    }
    throw Error(result.errors.front().code, msg);
  }
  return *result.config;
}

}  // namespace fgate
