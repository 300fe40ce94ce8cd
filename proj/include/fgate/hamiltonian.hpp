#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "fgate/config.hpp"
#include "fgate/error.hpp"
#include "fgate/fieldgen.hpp"

namespace fgate {

/// 4x4 Hamiltonian in rad/s over |00>, |01>, |10>, |11>.
using HamiltonianMatrix = Eigen::Matrix4cd;

namespace pauli {

inline Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }

inline Eigen::Matrix2cd x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

inline Eigen::Matrix2cd y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Eigen::Matrix2cd z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

/// a (x) b with qubit 1 as the left factor.
inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

}  // namespace pauli

/// Dipolar coupling for two spins separated along x, in rad/s:
/// g = gamma^2 mu0 muB^2 / (8 pi r^3 hbar), i.e. mu0 muB^2 / (2 pi r^3 hbar) at gamma = 2.
inline double dipole_coupling(const PhysicalConstants& k, double r) {
  if (!(r > 0)) throw Error(ErrorCode::NonPositiveDistance, "dipole coupling needs r > 0");
  return k.gamma * k.gamma * k.mu0 * k.muB * k.muB / (8.0 * kPi * r * r * r * k.hbar);
}

struct StaticTerms {
  double g;   // dipolar coupling
  double m1;  // -(muB/hbar)(B1 + B2), B_i = Bz_i + Bg_i
  double m2;  // -(muB/hbar)(B1 - B2)
};

inline StaticTerms static_terms(const SimulationConfig& cfg) {
  const auto& k = cfg.constants;
  const double zeeman = 0.5 * k.gamma * k.muB / k.hbar;
  const double b1 = cfg.Bz1 + cfg.Bg1;
  const double b2 = cfg.Bz2 + cfg.Bg2;
  return {dipole_coupling(k, cfg.r), -zeeman * (b1 + b2), -zeeman * (b1 - b2)};
}

/// J0 (sx sx + sy sy + sz sz).
inline HamiltonianMatrix exchange_term(double J0) {
  using namespace pauli;
  return J0 * (kron(x(), x()) + kron(y(), y()) + kron(z(), z()));
}

/// Closed-form block matrix: {|00>,|11>} block [[g+m1, -3g], [-3g, g-m1]],
/// {|01>,|10>} block [[-g+m2, -g], [-g, -g-m2]].
inline HamiltonianMatrix build_static(const StaticTerms& t, double J0 = 0.0) {
  HamiltonianMatrix h = HamiltonianMatrix::Zero();
  h(0, 0) = t.g + t.m1;
  h(0, 3) = -3.0 * t.g;
  h(3, 0) = -3.0 * t.g;
  h(3, 3) = t.g - t.m1;
  h(1, 1) = -t.g + t.m2;
  h(1, 2) = -t.g;
  h(2, 1) = -t.g;
  h(2, 2) = -t.g - t.m2;
  if (J0 != 0.0) h += exchange_term(J0);
  return h;
}

inline HamiltonianMatrix build_static(const SimulationConfig& cfg) { return build_static(static_terms(cfg), cfg.J0); }

/// Same operator assembled from Pauli products:
/// g (sz sz + sy sy - 2 sx sx) - (muB/hbar)(B1 sz (x) 1 + B2 1 (x) sz) + exchange.
inline HamiltonianMatrix build_static_from_pauli(const SimulationConfig& cfg) {
  using namespace pauli;
  const auto& k = cfg.constants;
  const double g = dipole_coupling(k, cfg.r);
  const double zeeman = 0.5 * k.gamma * k.muB / k.hbar;
  HamiltonianMatrix h = g * (kron(z(), z()) + kron(y(), y()) - 2.0 * kron(x(), x()));
  h -= zeeman * (cfg.Bz1 + cfg.Bg1) * kron(z(), identity());
  h -= zeeman * (cfg.Bz2 + cfg.Bg2) * kron(identity(), z());
  if (cfg.J0 != 0.0) h += exchange_term(cfg.J0);
  return h;
}

/// Peak drive amplitudes (muB/hbar) B_l for each spin, in rad/s.
struct DriveTerms {
  double amplitude1;
  double amplitude2;
  double omega1;
  double omega2;
};

inline DriveTerms drive_terms(const SimulationConfig& cfg, const ResonancePair& res) {
  const auto& k = cfg.constants;
  const double zeeman = 0.5 * k.gamma * k.muB / k.hbar;
  if (cfg.mode == Mode::Static) return {0.0, 0.0, res.omega1, res.omega2};
  return {zeeman * cfg.Bl1, zeeman * cfg.Bl2, res.omega1, res.omega2};
}

/// Linear drive at 45 degrees in the x-y plane, each spin at its own resonance:
/// a_i(t) (sx + sy) on spin i with a_i(t) = -(muB/hbar) B_li cos(omega_i t).
inline HamiltonianMatrix build_drive(const DriveTerms& d, double t) {
  using namespace pauli;
  const Eigen::Matrix2cd sxy = x() + y();
  const double a1 = -d.amplitude1 * std::cos(d.omega1 * t);
  const double a2 = -d.amplitude2 * std::cos(d.omega2 * t);
  HamiltonianMatrix h = HamiltonianMatrix::Zero();
  if (a1 != 0.0) h += a1 * kron(sxy, identity());
  if (a2 != 0.0) h += a2 * kron(identity(), sxy);
  return h;
}

inline HamiltonianMatrix build_drive(const SimulationConfig& cfg, const ResonancePair& res, double t) {
  return build_drive(drive_terms(cfg, res), t);
}

/// Largest rate in the problem: static entries plus drive peaks, or the
/// resonance frequencies, whichever is larger.
inline double hamiltonian_scale(const SimulationConfig& cfg, const ResonancePair& res) {
  const HamiltonianMatrix h = build_static(cfg);
  const DriveTerms d = drive_terms(cfg, res);
  const double entries = h.cwiseAbs().maxCoeff() + std::abs(d.amplitude1) + std::abs(d.amplitude2);
  return std::max({entries, std::abs(res.omega1), std::abs(res.omega2)});
}

inline bool is_hermitian(const HamiltonianMatrix& h, double rel_tol = 1e-12) {
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

}  // namespace fgate
