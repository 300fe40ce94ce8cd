#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fgate/config.hpp"
#include "fgate/constants.hpp"
#include "fgate/error.hpp"

namespace fgate {

/// Two parallel current-carrying wires centred at +-(rho + d/2).
struct WirePair {
  double current = 0.6;      // A
  double separation = 1e-6;  // m
  double radius = 1e-6;      // m

  double wire_position() const { return radius + separation / 2.0; }

  /// Currents outside [0.1, 0.6] A are allowed but flagged: below the band
  /// the splitting is too small to resolve, above it the wires overheat.
  bool current_in_feasible_band() const {
    const double a = std::abs(current);
    return a >= 0.1 && a <= 0.6;
  }
};

inline constexpr double kSingularityGuard = 1e-12;  // m

inline void check_wires(const WirePair& wires) {
  if (!(wires.radius > 0) || !(wires.separation > 0) || !(wires.current != 0.0) ||
      !std::isfinite(wires.current) || !std::isfinite(wires.radius) || !std::isfinite(wires.separation))
    throw Error(ErrorCode::InvalidValue, "wire pair needs rho > 0, d > 0 and I != 0");
}

/// Addressing field at position x between the wires (T). Odd in x.
inline double gradient_field(const WirePair& wires, double x,
                             const PhysicalConstants& k = kDefaultConstants) {
  check_wires(wires);
  const double a = wires.wire_position();
  if (std::abs(x - a) < kSingularityGuard || std::abs(x + a) < kSingularityGuard)
    throw Error(ErrorCode::SingularPosition, "x = " + std::to_string(x) + " m lies on a wire");
  return k.mu0 / (2.0 * kPi) * wires.current * (1.0 / (x + a) + 1.0 / (x - a));
}

struct FieldSample {
  double x;
  double field;
};

/// Evenly spaced profile over [from, to]; any grid point on a wire is an error.
inline std::vector<FieldSample> field_profile(const WirePair& wires, double from, double to, std::size_t points,
                                              const PhysicalConstants& k = kDefaultConstants) {
  if (points < 2) throw Error(ErrorCode::InvalidValue, "field profile needs at least 2 points");
  if (!(to > from)) throw Error(ErrorCode::InvalidValue, "field profile needs from < to");
  std::vector<FieldSample> out;
  out.reserve(points);
  const double step = (to - from) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = i + 1 == points ? to : from + step * static_cast<double>(i);
    out.push_back({x, gradient_field(wires, x, k)});
  }
  return out;
}

struct ResonancePair {
  double omega1;  // rad/s
  double omega2;  // rad/s
};

/// Zeeman angular frequency gamma * muB * B / hbar for each spin.
inline ResonancePair resonance_frequencies(const PhysicalConstants& k, double Bz1, double Bg1, double Bz2,
                                           double Bg2) {
  const double scale = k.gamma * k.muB / k.hbar;
  return {scale * (Bz1 + Bg1), scale * (Bz2 + Bg2)};
}

inline ResonancePair resonance_frequencies(const SimulationConfig& cfg) {
  return resonance_frequencies(cfg.constants, cfg.Bz1, cfg.Bg1, cfg.Bz2, cfg.Bg2);
}

}  // namespace fgate
