#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fgate/config.hpp"
#include "fgate/error.hpp"
#include "fgate/fieldgen.hpp"
#include "fgate/hamiltonian.hpp"

namespace fgate {

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> norms;  // squared norms

  std::size_t size() const { return times.size(); }

  double max_norm_deviation() const {
    double worst = 0.0;
    for (double n : norms) worst = std::max(worst, std::abs(n - 1.0));
    return worst;
  }
};

inline constexpr double kDefaultPhasePerStep = 0.05;

/// Step such that h_scale * dt equals phase_per_step radians.
inline double recommended_step(double h_scale, double phase_per_step = kDefaultPhasePerStep) {
  if (!(h_scale > 0)) throw Error(ErrorCode::InvalidValue, "Hamiltonian scale must be > 0");
  return phase_per_step / h_scale;
}

/// Exact propagator exp(-i H t) for a time-independent Hermitian H.
///
/// When H has the {|00>,|11>} / {|01>,|10>} block structure of the static
/// two-spin model each 2x2 block is exponentiated in closed form
/// (eigenvalues mean +- sqrt(half_gap^2 + |b|^2)); otherwise a full
/// eigendecomposition is used.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const HamiltonianMatrix& h) : h_(h) {
    if (!is_hermitian(h)) throw Error(ErrorCode::NonHermitianInput, "spectral propagation needs Hermitian H");
    block_ = h(0, 1) == 0.0 && h(0, 2) == 0.0 && h(3, 1) == 0.0 && h(3, 2) == 0.0 && h(1, 0) == 0.0 &&
             h(2, 0) == 0.0 && h(1, 3) == 0.0 && h(2, 3) == 0.0;
    if (block_) {
      blocks_[0] = make_block(0, 3);
      blocks_[1] = make_block(1, 2);
    } else {
      Eigen::SelfAdjointEigenSolver<HamiltonianMatrix> solver(h);
      energies_ = solver.eigenvalues();
      vectors_ = solver.eigenvectors();
    }
  }

  bool uses_blocks() const { return block_; }

  /// Eigenvalues in ascending order.
  Eigen::Vector4d eigenvalues() const {
    if (!block_) return energies_;
    Eigen::Vector4d e;
    e << blocks_[0].mean - blocks_[0].omega, blocks_[0].mean + blocks_[0].omega, blocks_[1].mean - blocks_[1].omega,
        blocks_[1].mean + blocks_[1].omega;
    std::sort(e.data(), e.data() + 4);
    return e;
  }

  StateVector evolve(const StateVector& psi0, double t) const {
    if (!block_) {
      const Eigen::Vector4cd phases = (energies_.cast<Complex>() * Complex(0, -t)).array().exp();
      return vectors_ * phases.asDiagonal() * (vectors_.adjoint() * psi0);
    }
    StateVector out = StateVector::Zero();
    for (const auto& b : blocks_) {
      // exp(-iMt) = e^{-i mean t} [cos(W t) - i sin(W t)/W (M - mean)]
      const double c = std::cos(b.omega * t);
      const double s_over_w = b.omega > 0 ? std::sin(b.omega * t) / b.omega : t;
      const Complex global = std::exp(Complex(0, -b.mean * t));
      const Complex u = psi0(b.i);
      const Complex v = psi0(b.j);
      const Complex mu = b.half_gap * u + b.off * v;
      const Complex mv = std::conj(b.off) * u - b.half_gap * v;
      out(b.i) = global * (c * u - Complex(0, 1) * s_over_w * mu);
      out(b.j) = global * (c * v - Complex(0, 1) * s_over_w * mv);
    }
    return out;
  }

 private:
  struct Block {
    int i, j;
    double mean;
    double half_gap;
    Complex off;
    double omega;
  };

  Block make_block(int i, int j) const {
    const double a = h_(i, i).real();
    const double d = h_(j, j).real();
    const Complex b = h_(i, j);
    const double half_gap = 0.5 * (a - d);
    return {i, j, 0.5 * (a + d), half_gap, b, std::sqrt(half_gap * half_gap + std::norm(b))};
  }

  HamiltonianMatrix h_;
  bool block_ = false;
  std::array<Block, 2> blocks_{};
  Eigen::Vector4d energies_ = Eigen::Vector4d::Zero();
  HamiltonianMatrix vectors_ = HamiltonianMatrix::Identity();
};

inline Trajectory propagate_static(const HamiltonianMatrix& h, const StateVector& psi0, std::span<const double> times) {
  const SpectralPropagator prop(h);
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());
  traj.norms.reserve(times.size());
  for (double t : times) {
    traj.states.push_back(prop.evolve(psi0, t));
    traj.norms.push_back(traj.states.back().squaredNorm());
  }
  return traj;
}

/// H(t) = H_static + a1(t) X1 + a2(t) X2 with Xi = (sx + sy) on spin i.
class TimeDependentHamiltonian {
 public:
  TimeDependentHamiltonian(const SimulationConfig& cfg, const ResonancePair& res)
      : static_(build_static(cfg)), drive_(drive_terms(cfg, res)) {
    const Eigen::Matrix2cd sxy = pauli::x() + pauli::y();
    x1_ = pauli::kron(sxy, pauli::identity());
    x2_ = pauli::kron(pauli::identity(), sxy);
    driven_ = drive_.amplitude1 != 0.0 || drive_.amplitude2 != 0.0;
  }

  bool driven() const { return driven_; }
  const HamiltonianMatrix& static_part() const { return static_; }

  /// -i H(t) psi
  StateVector derivative(double t, const StateVector& psi) const {
    StateVector hpsi = static_ * psi;
    if (driven_) {
      const double a1 = -drive_.amplitude1 * std::cos(drive_.omega1 * t);
      const double a2 = -drive_.amplitude2 * std::cos(drive_.omega2 * t);
      hpsi.noalias() += a1 * (x1_ * psi);
      hpsi.noalias() += a2 * (x2_ * psi);
    }
    return Complex(0, -1) * hpsi;
  }

 private:
  HamiltonianMatrix static_;
  DriveTerms drive_;
  HamiltonianMatrix x1_;
  HamiltonianMatrix x2_;
  bool driven_ = false;
};

/// Classical fourth-order Runge-Kutta step of i dpsi/dt = H(t) psi.
inline StateVector rk4_step(const TimeDependentHamiltonian& h, double t, double dt, const StateVector& psi) {
  const StateVector k1 = h.derivative(t, psi);
  const StateVector k2 = h.derivative(t + 0.5 * dt, psi + (0.5 * dt) * k1);
  const StateVector k3 = h.derivative(t + 0.5 * dt, psi + (0.5 * dt) * k2);
  const StateVector k4 = h.derivative(t + dt, psi + dt * k3);
  return psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Integrates from t0 to t1 in ceil((t1 - t0) / max_dt) equal steps.
inline StateVector rk4_evolve(const TimeDependentHamiltonian& h, StateVector psi, double t0, double t1, double max_dt) {
  if (!(t1 > t0)) return psi;
  const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / max_dt));
  const double dt = (t1 - t0) / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) psi = rk4_step(h, t0 + static_cast<double>(k) * dt, dt, psi);
  return psi;
}

/// Integration grid derived from a config: t_max covered in whole steps no
/// longer than dt, with a sample stored every `stride` steps and at t_max.
struct StepGrid {
  std::size_t steps;
  double dt;
  std::size_t stride;

  static StepGrid from(const SimulationConfig& cfg) {
    const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_max / cfg.dt - 1e-9));
    const std::size_t target = std::max<std::size_t>(cfg.samples, 2) - 1;
    const std::size_t stride = std::max<std::size_t>(1, steps / target);
    return {steps, cfg.t_max / static_cast<double>(steps), stride};
  }

  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
};

inline void check_norm(double squared_norm, double t, double tolerance) {
  if (!(std::abs(squared_norm - 1.0) <= tolerance))
    throw Error(ErrorCode::NormDrift, "squared norm " + std::to_string(squared_norm) + " at t = " +
                                          std::to_string(t) + " s; reduce dt");
}

/// Fixed-step RK4 over [0, t_max] for either mode. The state is never
/// renormalized; leaving the norm band raises NormDrift.
inline Trajectory propagate_numeric(const SimulationConfig& cfg, const ResonancePair& res) {
  const TimeDependentHamiltonian h(cfg, res);
  const StepGrid grid = StepGrid::from(cfg);
  Trajectory traj;
  const std::size_t expected = grid.steps / grid.stride + 2;
  traj.times.reserve(expected);
  traj.states.reserve(expected);
  traj.norms.reserve(expected);

  auto record = [&](double t, const StateVector& psi) {
    const double n = psi.squaredNorm();
    check_norm(n, t, cfg.norm_tolerance);
    traj.times.push_back(t);
    traj.states.push_back(psi);
    traj.norms.push_back(n);
  };

  StateVector psi = cfg.initial_state;
  record(0.0, psi);
  for (std::size_t k = 0; k < grid.steps; ++k) {
    psi = rk4_step(h, grid.time(k), grid.dt, psi);
    const std::size_t done = k + 1;
    if (done % grid.stride == 0 || done == grid.steps) record(done == grid.steps ? cfg.t_max : grid.time(done), psi);
  }
  return traj;
}

/// Times at which propagate_numeric stores samples for this config.
inline std::vector<double> sample_times(const SimulationConfig& cfg) {
  const StepGrid grid = StepGrid::from(cfg);
  std::vector<double> out{0.0};
  for (std::size_t done = 1; done <= grid.steps; ++done)
    if (done % grid.stride == 0 || done == grid.steps) out.push_back(done == grid.steps ? cfg.t_max : grid.time(done));
  return out;
}

}  // namespace fgate
