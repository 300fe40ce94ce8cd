#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "fgate/analysis.hpp"
#include "fgate/config.hpp"
#include "fgate/fieldgen.hpp"
#include "fgate/hamiltonian.hpp"
#include "fgate/propagator.hpp"

namespace fgate {

struct GateResult {
  double tau;
  double theta_at_tau;
  double concurrence_at_tau;
  double eof_at_tau;
  std::uint64_t ops_budget;
  CorrectionPhases correction;
  BasisPhases acquired_phases;  // phi00, phi01, phi10, phi11 at tau
  StateVector state_at_tau;
};

struct SimulationOutput {
  ResonancePair resonances;
  Trajectory trajectory;
  PhaseSeries phases;
  std::vector<double> concurrence;
  std::optional<GateResult> gate;  // empty when theta never reaches +-pi
};

struct ProbeSample {
  StateVector state;
  BasisPhases args;
  double theta;
};

/// Re-propagates to arbitrary t inside a stored trajectory: the spectral
/// propagator from psi0 in static mode, RK4 sub-steps from the previous
/// sample otherwise. Basis phases continue from that sample.
class TrajectoryProbe {
 public:
  TrajectoryProbe(const SimulationConfig& cfg, const ResonancePair& res, const Trajectory& traj,
                  const PhaseSeries& phases)
      : cfg_(cfg), hamiltonian_(cfg, res), traj_(traj), phases_(phases) {
    if (!hamiltonian_.driven()) spectral_.emplace(hamiltonian_.static_part());
  }

  ProbeSample at(double t) const {
    const auto it = std::upper_bound(traj_.times.begin(), traj_.times.end(), t);
    const std::size_t k = it == traj_.times.begin() ? 0 : static_cast<std::size_t>(it - traj_.times.begin()) - 1;
    StateVector psi = spectral_ ? spectral_->evolve(cfg_.initial_state, t)
                                : rk4_evolve(hamiltonian_, traj_.states[k], traj_.times[k], t, cfg_.dt);
    const BasisPhases args = continue_args(phases_.basis_args[k], raw_args(psi, t));
    return {psi, args, composite_phase(args) - phases_.theta_offset};
  }

  PhaseProbe theta_probe() const {
    return [this](double t) { return at(t).theta; };
  }

 private:
  const SimulationConfig& cfg_;
  TimeDependentHamiltonian hamiltonian_;
  const Trajectory& traj_;
  const PhaseSeries& phases_;
  std::optional<SpectralPropagator> spectral_;
};

inline GateResult gate_result_at(const ProbeSample& s, double tau, double T2, const PhaseSeries& phases) {
  const BasisPhases& start = phases.basis_args.front();
  BasisPhases acquired{};
  for (std::size_t i = 0; i < 4; ++i) acquired[i] = s.args[i] - start[i];
  const double c = concurrence(s.state);
  return {tau,
          s.theta,
          c,
          entanglement_of_formation(c),
          ops_budget(tau, T2),
          correction_phases(acquired[0], acquired[1], acquired[2]),
          acquired,
          s.state};
}

/// Propagates the configured system, unwraps phases and locates the gate.
inline SimulationOutput simulate(const ValidatedConfig& validated, double target = -kPi) {
  const SimulationConfig& cfg = validated.get();
  SimulationOutput out;
  out.resonances = resonance_frequencies(cfg);
  out.trajectory = propagate_numeric(cfg, out.resonances);
  out.phases = unwrap_phases(out.trajectory);
  out.concurrence.reserve(out.trajectory.size());
  for (const auto& psi : out.trajectory.states) out.concurrence.push_back(concurrence(psi));

  const TrajectoryProbe probe(cfg, out.resonances, out.trajectory, out.phases);
  try {
    const GateCrossing crossing = find_gate_crossing(out.phases, target, probe.theta_probe());
    out.gate = gate_result_at(probe.at(crossing.tau), crossing.tau, cfg.T2, out.phases);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoCrossing) throw;
  }
  return out;
}

/// Gate summary only; throws NoCrossing when the horizon is too short.
inline GateResult analyze_gate(const ValidatedConfig& validated, double target = -kPi) {
  auto out = simulate(validated, target);
  if (!out.gate) {
    const double last = out.phases.theta.empty() ? 0.0 : out.phases.theta.back();
    throw Error(ErrorCode::NoCrossing, "theta(t_max) = " + std::to_string(last) + " rad");
  }
  return *out.gate;
}

}  // namespace fgate
