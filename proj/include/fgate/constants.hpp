#pragma once

#include <numbers>

namespace fgate {

/// SI constants used by the model. Defaults are CODATA 2018.
struct PhysicalConstants {
  double mu0 = 1.25663706212e-6;     // T m / A
  double muB = 9.2740100783e-24;     // J / T
  double hbar = 1.054571817e-34;     // J s
  double gamma = 2.0;                // electron g-factor

  bool valid() const { return mu0 > 0 && muB > 0 && hbar > 0 && gamma > 0; }
};

inline constexpr PhysicalConstants kDefaultConstants{};

inline constexpr double kPi = std::numbers::pi;

}  // namespace fgate
