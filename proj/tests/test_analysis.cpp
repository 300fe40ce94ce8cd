#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fgate/analysis.hpp"
#include "fgate/simulation.hpp"
#include "test_support.hpp"

using namespace fgate;

namespace {

Trajectory constant_trajectory(const StateVector& psi, int n) {
  Trajectory t;
  for (int k = 0; k <= n; ++k) {
    t.times.push_back(1e-10 * k);
    t.states.push_back(psi);
    t.norms.push_back(psi.squaredNorm());
  }
  return t;
}

/// Diagonal evolution with fixed per-basis rates.
Trajectory diagonal_trajectory(const std::array<double, 4>& rates, const StateVector& psi0, double t_max, int n) {
  Trajectory t;
  for (int k = 0; k <= n; ++k) {
    const double time = t_max * k / n;
    StateVector psi;
    for (int i = 0; i < 4; ++i) psi(i) = psi0(i) * std::exp(Complex(0, rates[static_cast<std::size_t>(i)] * time));
    t.times.push_back(time);
    t.states.push_back(psi);
    t.norms.push_back(psi.squaredNorm());
  }
  return t;
}

}  // namespace

TEST(UnwrapPhases, ConstantStateHasZeroTheta) {
  std::mt19937_64 rng(1);
  const auto phases = unwrap_phases(constant_trajectory(test::random_state(rng), 20));
  for (double th : phases.theta) EXPECT_EQ(th, 0.0);
}

TEST(UnwrapPhases, FollowsManyTurns) {
  // per-sample increments of ~2.5 rad on c4 stay below pi, so the total 40 turns survive unwrapping
  const std::array<double, 4> rates{0.0, 0.0, 0.0, -2.5e10};
  const auto phases = unwrap_phases(diagonal_trajectory(rates, default_initial_state(), 1e-8, 1000));
  EXPECT_NEAR(phases.theta.back(), -2.5e10 * 1e-8, 1e-9);
  for (std::size_t k = 1; k < phases.theta.size(); ++k)
    EXPECT_LT(std::abs(phases.theta[k] - phases.theta[k - 1]), kPi);
}

TEST(UnwrapPhases, RescalesComplexInitialPhase) {
  const StateVector psi = test::state(Complex(0.5, 0), Complex(0, 0.5), Complex(-0.5, 0), Complex(0, -0.5));
  const auto phases = unwrap_phases(constant_trajectory(psi, 3));
  EXPECT_EQ(phases.theta.front(), 0.0);
  EXPECT_NE(phases.theta_offset, 0.0);
}

TEST(UnwrapPhases, ZeroAmplitudeIsUndefined) {
  try {
    unwrap_phases(constant_trajectory(test::state(1.0, 0.0, 0.0, 0.0), 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UndefinedPhase);
  }
}

TEST(UnwrapPhases, ThetaInvariantUnderGlobalAndLocalZPhases) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const StateVector psi = test::random_state(rng);
    const double alpha = angle(rng), beta = angle(rng), gamma = angle(rng);
    StateVector moved = psi * std::exp(Complex(0, alpha));
    moved(1) *= std::exp(Complex(0, gamma));
    moved(2) *= std::exp(Complex(0, beta));
    moved(3) *= std::exp(Complex(0, beta + gamma));
    const double before = composite_phase(raw_args(psi, 0.0));
    const double after = composite_phase(raw_args(moved, 0.0));
    // raw Args land on arbitrary branches; the composite is defined mod 2 pi
    EXPECT_NEAR(std::remainder(after - before, 2 * kPi), 0.0, 1e-12);
    EXPECT_NEAR(concurrence(moved), concurrence(psi), 1e-12);
  }
}

TEST(FindGateTime, LinearTheta) {
  const double tau0 = 7.3e-9;
  const std::array<double, 4> rates{-kPi / tau0, 0.0, 0.0, 0.0};
  const auto phases = unwrap_phases(diagonal_trajectory(rates, default_initial_state(), 2e-8, 1000));
  EXPECT_NEAR(find_gate_time(phases), tau0, 1e-18);
  const PhaseProbe exact = [&](double t) { return -kPi / tau0 * t; };
  EXPECT_NEAR(find_gate_time(phases, -kPi, exact), tau0, 1e-12);
}

TEST(FindGateTime, ReportsPositiveCrossingWhenFirst) {
  const double tau0 = 4e-9;
  const std::array<double, 4> rates{kPi / tau0, 0.0, 0.0, 0.0};
  const auto phases = unwrap_phases(diagonal_trajectory(rates, default_initial_state(), 1e-8, 500));
  const auto crossing = find_gate_crossing(phases);
  EXPECT_NEAR(crossing.tau, tau0, 1e-18);
  EXPECT_EQ(crossing.target, kPi);
}

TEST(FindGateTime, NoCrossing) {
  const std::array<double, 4> rates{-1e8, 0.0, 0.0, 0.0};
  const auto phases = unwrap_phases(diagonal_trajectory(rates, default_initial_state(), 1e-8, 100));
  try {
    find_gate_time(phases);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoCrossing);
  }
}

TEST(CorrectionPhases, Examples) {
  const auto zero = correction_phases(0, 0, 0);
  EXPECT_EQ(zero.s1_0, 0.0);
  EXPECT_EQ(zero.s1_1, 0.0);
  EXPECT_EQ(zero.s2_0, 0.0);
  EXPECT_EQ(zero.s2_1, 0.0);
  const double a = 0.4, b = -1.1, c = 2.3;
  const auto s = correction_phases(2 * a, b, c);
  EXPECT_DOUBLE_EQ(s.s1_0, -a);
  EXPECT_DOUBLE_EQ(s.s1_1, -c + a);
  EXPECT_DOUBLE_EQ(s.s2_0, -a);
  EXPECT_DOUBLE_EQ(s.s2_1, -b + a);
}

TEST(CorrectionPhases, LeaveOnlyEntanglingPhase) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const double p00 = angle(rng), p01 = angle(rng), p10 = angle(rng), p11 = angle(rng);
    const auto s = correction_phases(p00, p01, p10);
    // S1 (x) S2 adds s1^j + s2^l to |jl>
    EXPECT_NEAR(p00 + s.s1_0 + s.s2_0, 0.0, 1e-12);
    EXPECT_NEAR(p01 + s.s1_0 + s.s2_1, 0.0, 1e-12);
    EXPECT_NEAR(p10 + s.s1_1 + s.s2_0, 0.0, 1e-12);
    EXPECT_NEAR(p11 + s.s1_1 + s.s2_1, p11 - p10 - p01 + p00, 1e-12);
  }
}

TEST(Concurrence, Examples) {
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(concurrence(test::state(h, 0, 0, h)), 1.0, 1e-15);
  EXPECT_EQ(concurrence(test::state(1, 0, 0, 0)), 0.0);
  EXPECT_EQ(concurrence(default_initial_state()), 0.0);
  EXPECT_THROW(concurrence(StateVector::Zero()), Error);
}

TEST(Concurrence, MatchesSpinFlipOverlap) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const StateVector psi = test::random_state(rng);
    const StateVector flipped = spin_flip(psi);
    EXPECT_NEAR(concurrence(psi), std::abs(psi.dot(flipped)), 1e-12);
    EXPECT_NEAR(concurrence(flipped), concurrence(psi), 1e-12);
    const double c = concurrence(psi);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0 + 1e-15);
  }
}

TEST(Concurrence, ProductStatesVanish) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) EXPECT_LE(concurrence(test::random_product_state(rng)), 1e-12);
}

TEST(Concurrence, NormalizesByNorm) {
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(concurrence(test::state(3 * h, 0, 0, 3 * h)), 1.0, 1e-15);
}

TEST(EntanglementOfFormation, Examples) {
  EXPECT_EQ(entanglement_of_formation(0.0), 0.0);
  EXPECT_NEAR(entanglement_of_formation(1.0), 1.0, 1e-15);
  // mpmath: h(0.9)
  EXPECT_NEAR(entanglement_of_formation(0.6), 0.46899559358928122, 1e-14);
  EXPECT_THROW(entanglement_of_formation(1.1), Error);
  EXPECT_THROW(entanglement_of_formation(-0.1), Error);
}

TEST(EntanglementOfFormation, StrictlyIncreasing) {
  double prev = entanglement_of_formation(0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double e = entanglement_of_formation(i / 1000.0);
    EXPECT_GT(e, prev) << i;
    prev = e;
  }
}

TEST(OpsBudget, Examples) {
  EXPECT_EQ(ops_budget(9.1e-9, 20e-6), 2197u);
  EXPECT_EQ(ops_budget(9.8e-9, 20e-6), 2040u);
  EXPECT_EQ(ops_budget(20e-6, 20e-6), 1u);
  EXPECT_THROW(ops_budget(0.0, 20e-6), Error);
}

TEST(Simulation, ProductStateUnderZeroHamiltonianStaysUnentangled) {
  auto cfg = test::nominal_static();
  cfg.r = 1e-3;  // g ~ 1e-10 rad/s
  cfg.Bz1 = cfg.Bz2 = cfg.Bg1 = cfg.Bg2 = 0.0;
  cfg.t_max = 1e-9;
  cfg.dt = 1e-11;
  std::mt19937_64 rng(31);
  cfg.initial_state = test::random_product_state(rng);
  const auto out = simulate(validate_or_throw(cfg));
  for (double c : out.concurrence) EXPECT_LE(c, 1e-12);
  for (double th : out.phases.theta) EXPECT_NEAR(th, 0.0, 1e-12);
  EXPECT_FALSE(out.gate.has_value());
}

TEST(Simulation, StaticGateSummaryIsConsistent) {
  const auto out = simulate(validate_or_throw(test::nominal_static()));
  ASSERT_TRUE(out.gate.has_value());
  const GateResult& g = *out.gate;
  EXPECT_NEAR(g.theta_at_tau, -kPi, 1e-6);
  EXPECT_GE(g.concurrence_at_tau, 0.0);
  EXPECT_LE(g.concurrence_at_tau, 1.0);
  EXPECT_NEAR(g.eof_at_tau, entanglement_of_formation(g.concurrence_at_tau), 1e-15);
  EXPECT_EQ(g.ops_budget, ops_budget(g.tau, 20e-6));
  // theta is the composite of the acquired phases
  const auto& p = g.acquired_phases;
  EXPECT_NEAR(p[0] - p[1] - p[2] + p[3], g.theta_at_tau, 1e-9);
  for (double c : out.concurrence) {
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
  }
}

TEST(Simulation, ShortHorizonHasNoCrossing) {
  auto cfg = test::nominal_static();
  cfg.t_max = 2e-9;
  cfg.dt = 1e-13;
  EXPECT_THROW(analyze_gate(validate_or_throw(cfg)), Error);
}
