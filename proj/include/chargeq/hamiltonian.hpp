#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

#include "chargeq/error.hpp"
#include "chargeq/layout.hpp"
#include "chargeq/physics.hpp"

namespace chargeq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Basis convention: bit i of the index encodes qubit i (little-endian);
// bit 0 <-> |+> (sigma_z eigenvalue +1), bit 1 <-> |->.
struct QuantumState {
  CVector amplitudes;
  int n_qubits = 0;

  static QuantumState basis(int n, std::size_t index) {
    QuantumState s;
    s.n_qubits = n;
    s.amplitudes = CVector::Zero(std::size_t{1} << n);
    s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
  }

  double norm() const { return amplitudes.norm(); }
};

// H/hbar in rad/s, dense 2^N x 2^N.
struct HamiltonianMatrix {
  CMatrix entries;
  int n_qubits = 0;
};

inline constexpr int kDefaultMaxQubits = 12;
inline constexpr int kHardMaxQubits = 14;

// Simulation dimension cap; CHARGEQ_MAX_QUBITS overrides, bounded at 14.
inline int max_simulated_qubits() {
  if (const char* env = std::getenv("CHARGEQ_MAX_QUBITS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, kHardMaxQubits);
  }
  return kDefaultMaxQubits;
}

inline void check_simulable(int n_qubits) {
  if (n_qubits > max_simulated_qubits())
    throw Error(ErrorKind::size_cap,
                "not simulable at desk scale: " + std::to_string(n_qubits) +
                    " qubits exceeds the cap of " +
                    std::to_string(max_simulated_qubits()));
}

// sigma_z eigenvalue of qubit q in basis state idx.
inline double sz_sign(std::size_t idx, int q) {
  return (idx >> q) & 1u ? -1.0 : 1.0;
}

// H/hbar = -sum_i (omega_i/2) sigma_z^i + sum_{i<j} J_ij sigma_x^i sigma_x^j
inline HamiltonianMatrix build_full(const DerivedParams& params) {
  const int n = static_cast<int>(params.size());
  check_simulable(n);
  const std::size_t dim = std::size_t{1} << n;
  HamiltonianMatrix h;
  h.n_qubits = n;
  h.entries = CMatrix::Zero(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double diag = 0.0;
    for (int q = 0; q < n; ++q) diag += -0.5 * params.omega(q) * sz_sign(idx, q);
    h.entries(idx, idx) = diag;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double J = params.j_couple(i, j);
        if (J == 0.0) continue;
        std::size_t flipped = idx ^ (std::size_t{1} << i) ^ (std::size_t{1} << j);
        h.entries(flipped, idx) += J;
      }
  }
  return h;
}

// RWA Hamiltonian: same sigma_z part, flip-flop terms only inside the
// layout's resonant clusters. Requires equal frequencies within a cluster.
inline HamiltonianMatrix build_rwa(const DerivedParams& params,
                                   const ResonantLayout& layout) {
  const int n = static_cast<int>(params.size());
  check_simulable(n);
  check_layout(layout, params.size());
  for (const auto& cluster : layout.clusters()) {
    for (std::size_t a = 0; a < cluster.size(); ++a)
      for (std::size_t b = a + 1; b < cluster.size(); ++b) {
        double wi = params.omega(cluster[a]);
        double wj = params.omega(cluster[b]);
        double scale = std::max(std::abs(wi), std::abs(wj));
        if (std::abs(wi - wj) > 1e-9 * scale)
          throw Error(ErrorKind::contract,
                      "resonance violation: qubits " + std::to_string(cluster[a]) +
                          " and " + std::to_string(cluster[b]) +
                          " are in one cluster but detuned");
      }
  }

  const std::size_t dim = std::size_t{1} << n;
  HamiltonianMatrix h;
  h.n_qubits = n;
  h.entries = CMatrix::Zero(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double diag = 0.0;
    for (int q = 0; q < n; ++q) diag += -0.5 * params.omega(q) * sz_sign(idx, q);
    h.entries(idx, idx) = diag;
  }
  for (const auto& cluster : layout.clusters()) {
    for (std::size_t a = 0; a < cluster.size(); ++a)
      for (std::size_t b = a + 1; b < cluster.size(); ++b) {
        int i = cluster[a], j = cluster[b];
        double J = params.j_couple(i, j);
        if (J == 0.0) continue;
        std::size_t bi = std::size_t{1} << i, bj = std::size_t{1} << j;
        for (std::size_t idx = 0; idx < dim; ++idx) {
          bool si = idx & bi, sj = idx & bj;
          if (si == sj) continue;  // flip-flop moves one excitation
          h.entries(idx ^ bi ^ bj, idx) += J;
        }
      }
  }
  return h;
}

inline void check_hermitian(const CMatrix& m) {
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * scale)
    throw Error(ErrorKind::contract, "matrix is not Hermitian");
}

// U = exp(-i (H/hbar) t) via eigendecomposition of the Hermitian matrix.
inline CMatrix propagator(const HamiltonianMatrix& h, double t) {
  if (t < 0.0) throw Error(ErrorKind::invalid_input, "propagator time must be >= 0");
  check_hermitian(h.entries);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.entries);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::contract, "eigendecomposition failed");
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  CVector phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -vals(k) * t));
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

inline QuantumState evolve(const HamiltonianMatrix& h, double t,
                           const QuantumState& psi) {
  if (h.n_qubits != psi.n_qubits ||
      h.entries.rows() != psi.amplitudes.size())
    throw Error(ErrorKind::invalid_input, "state/Hamiltonian dimension mismatch");
  QuantumState out;
  out.n_qubits = psi.n_qubits;
  out.amplitudes = propagator(h, t) * psi.amplitudes;
  return out;
}

struct GroundStateResult {
  QuantumState state;
  double energy = 0.0;       // rad/s
  bool degenerate = false;   // gap below 1e-9 x spectral range
};

inline GroundStateResult ground_state(const HamiltonianMatrix& h) {
  check_hermitian(h.entries);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.entries);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::contract, "eigendecomposition failed");
  const auto& vals = solver.eigenvalues();
  GroundStateResult result;
  result.energy = vals(0);
  double range = vals(vals.size() - 1) - vals(0);
  if (vals.size() > 1 && vals(1) - vals(0) < 1e-9 * range)
    result.degenerate = true;
  result.state.n_qubits = h.n_qubits;
  result.state.amplitudes = solver.eigenvectors().col(0);
  // Phase convention: largest-magnitude amplitude real positive, ties broken
  // by the lowest index.
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index k = 0; k < result.state.amplitudes.size(); ++k) {
    double mag = std::abs(result.state.amplitudes(k));
    if (mag > best_mag * (1.0 + 1e-15)) {
      best_mag = mag;
      best = k;
    }
  }
  Complex pivot = result.state.amplitudes(best);
  if (std::abs(pivot) > 0.0)
    result.state.amplitudes *= std::conj(pivot) / std::abs(pivot);
  return result;
}

// |Tr(U^dag V)| / d, global-phase invariant.
inline double compare(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw Error(ErrorKind::invalid_input, "unitary dimension mismatch");
  Complex tr = (u.adjoint() * v).trace();
  return std::min(1.0, std::abs(tr) / static_cast<double>(u.rows()));
}

// 1 - F between the full and RWA propagators over time t.
inline double rwa_gap(const DerivedParams& params, const ResonantLayout& layout,
                      double t) {
  CMatrix full = propagator(build_full(params), t);
  CMatrix rwa = propagator(build_rwa(params, layout), t);
  return 1.0 - compare(full, rwa);
}

}  // namespace chargeq
