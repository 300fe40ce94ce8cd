#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fgate/config.hpp"
#include "fgate/error.hpp"
#include "fgate/propagator.hpp"

namespace fgate {

/// Sign pattern of the composite phase: +arg c1 - arg c2 - arg c3 + arg c4.
inline constexpr std::array<double, 4> kThetaWeights{1.0, -1.0, -1.0, 1.0};

inline constexpr double kAmplitudeFloor = 1e-12;

using BasisPhases = std::array<double, 4>;

struct PhaseSeries {
  std::vector<double> times;
  std::vector<double> theta;            // rescaled so theta[0] == 0
  std::vector<BasisPhases> basis_args;  // continuous Arg(c_i), not rescaled
  double theta_offset = 0.0;            // raw composite phase at t = 0
};

inline double composite_phase(const BasisPhases& args) {
  double theta = 0.0;
  for (std::size_t i = 0; i < 4; ++i) theta += kThetaWeights[i] * args[i];
  return theta;
}

/// Branch of `raw` nearest to `previous`.
inline double continue_phase(double previous, double raw) {
  return previous + std::remainder(raw - previous, 2.0 * kPi);
}

inline BasisPhases raw_args(const StateVector& psi, double t, double amp_floor = kAmplitudeFloor) {
  BasisPhases out{};
  for (int i = 0; i < 4; ++i) {
    if (std::abs(psi(i)) < amp_floor)
      throw Error(ErrorCode::UndefinedPhase,
                  "|c" + std::to_string(i + 1) + "| below amplitude floor at t = " + std::to_string(t) + " s");
    out[static_cast<std::size_t>(i)] = std::arg(psi(i));
  }
  return out;
}

inline BasisPhases continue_args(const BasisPhases& previous, const BasisPhases& raw) {
  BasisPhases out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = continue_phase(previous[i], raw[i]);
  return out;
}

/// Continuous per-coefficient phases, then theta composed from them.
inline PhaseSeries unwrap_phases(const Trajectory& traj, double amp_floor = kAmplitudeFloor) {
  PhaseSeries out;
  if (traj.size() == 0) return out;
  out.times = traj.times;
  out.basis_args.reserve(traj.size());
  out.theta.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const BasisPhases raw = raw_args(traj.states[k], traj.times[k], amp_floor);
    out.basis_args.push_back(k == 0 ? raw : continue_args(out.basis_args.back(), raw));
  }
  out.theta_offset = composite_phase(out.basis_args.front());
  for (const auto& args : out.basis_args) out.theta.push_back(composite_phase(args) - out.theta_offset);
  return out;
}

/// Evaluates theta(t) between stored samples. Implementations continue the
/// basis phases from the nearest earlier sample.
using PhaseProbe = std::function<double(double)>;

inline constexpr double kGateTimeTolerance = 1e-12;  // s
inline constexpr double kPhaseTolerance = 1e-6;       // rad

struct GateCrossing {
  double tau;
  double target;       // the +-pi level that was crossed
  std::size_t bracket; // index of the first sample past the crossing
};

/// First time theta reaches `target` or its mirror -target, whichever is
/// first. With a probe the bracket is bisected until it is narrower than
/// `tolerance` and theta at the midpoint is within kPhaseTolerance of the
/// level; without one the crossing is linearly interpolated between samples.
inline GateCrossing find_gate_crossing(const PhaseSeries& phases, double target = -kPi, const PhaseProbe& probe = {},
                                       double tolerance = kGateTimeTolerance) {
  const double lo_level = -std::abs(target);
  const double hi_level = std::abs(target);
  for (std::size_t k = 1; k < phases.theta.size(); ++k) {
    const double th = phases.theta[k];
    double level;
    if (th <= lo_level)
      level = lo_level;
    else if (th >= hi_level)
      level = hi_level;
    else
      continue;

    double a = phases.times[k - 1];
    double b = phases.times[k];
    const double fa = phases.theta[k - 1] - level;
    const double fb = th - level;
    if (!probe) {
      const double tau = fb == fa ? b : a + (b - a) * fa / (fa - fb);
      return {tau, level, k};
    }
    const bool left_sign = fa > 0;
    double mid = 0.5 * (a + b);
    double f_mid = probe(mid) - level;
    for (int iter = 0; iter < 200 && (b - a > tolerance || std::abs(f_mid) > kPhaseTolerance); ++iter) {
      ((f_mid > 0) == left_sign ? a : b) = mid;
      const double next = 0.5 * (a + b);
      if (next == mid) break;
      mid = next;
      f_mid = probe(mid) - level;
    }
    return {mid, level, k};
  }
  const double last = phases.theta.empty() ? 0.0 : phases.theta.back();
  throw Error(ErrorCode::NoCrossing, "theta never reaches +-" + std::to_string(std::abs(target)) +
                                         "; theta(t_max) = " + std::to_string(last) + " rad");
}

inline double find_gate_time(const PhaseSeries& phases, double target = -kPi, const PhaseProbe& probe = {}) {
  return find_gate_crossing(phases, target, probe).tau;
}

/// Phases of the local operator S1 (x) S2 that leaves only the entangling phase on |11>.
struct CorrectionPhases {
  double s1_0;
  double s1_1;
  double s2_0;
  double s2_1;
};

inline CorrectionPhases correction_phases(double phi00, double phi01, double phi10) {
  return {-phi00 / 2.0, -phi10 + phi00 / 2.0, -phi00 / 2.0, -phi01 + phi00 / 2.0};
}

/// (sy (x) sy) psi*.
inline StateVector spin_flip(const StateVector& psi) {
  // sy sy maps |00> -> -|11>, |01> -> |10>, |10> -> |01>, |11> -> -|00>
  StateVector out;
  out << -std::conj(psi(3)), std::conj(psi(2)), std::conj(psi(1)), -std::conj(psi(0));
  return out;
}

/// 2 |c2 c3 - c1 c4| / <psi|psi>.
inline double concurrence(const StateVector& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0)) throw Error(ErrorCode::ZeroState, "concurrence of the zero vector");
  return 2.0 * std::abs(psi(1) * psi(2) - psi(0) * psi(3)) / n2;
}

/// Binary entropy in bits with h(0) = h(1) = 0.
inline double binary_entropy(double x) {
  auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  return term(x) + term(1.0 - x);
}

inline double entanglement_of_formation(double c) {
  constexpr double slack = 1e-12;
  if (!(c >= -slack && c <= 1.0 + slack))
    throw Error(ErrorCode::OutOfRange, "concurrence " + std::to_string(c) + " outside [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

/// Whole gate operations that fit inside T2.
inline std::uint64_t ops_budget(double tau, double T2) {
  if (!(tau > 0)) throw Error(ErrorCode::InvalidValue, "gate time must be > 0");
  return static_cast<std::uint64_t>(std::floor(T2 / tau));
}

}  // namespace fgate
