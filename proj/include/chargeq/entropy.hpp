#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "chargeq/error.hpp"
#include "chargeq/hamiltonian.hpp"

namespace chargeq {

// Reduced density matrix of the qubits in `keep` (ascending order of the
// original indices defines the sub-basis bits).
inline CMatrix reduced_density(const QuantumState& psi,
                               const std::vector<int>& keep) {
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  for (int q : sorted)
    if (q < 0 || q >= psi.n_qubits)
      throw Error(ErrorKind::invalid_input, "partition index out of range");
  for (std::size_t a = 1; a < sorted.size(); ++a)
    if (sorted[a] == sorted[a - 1])
      throw Error(ErrorKind::invalid_input, "partition repeats a qubit");

  std::vector<int> rest;
  for (int q = 0; q < psi.n_qubits; ++q)
    if (std::find(sorted.begin(), sorted.end(), q) == sorted.end())
      rest.push_back(q);

  const std::size_t da = std::size_t{1} << sorted.size();
  const std::size_t db = std::size_t{1} << rest.size();
  auto full_index = [&](std::size_t a, std::size_t b) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k)
      if ((a >> k) & 1u) idx |= std::size_t{1} << sorted[k];
    for (std::size_t k = 0; k < rest.size(); ++k)
      if ((b >> k) & 1u) idx |= std::size_t{1} << rest[k];
    return idx;
  };

  CMatrix rho = CMatrix::Zero(da, da);
  for (std::size_t b = 0; b < db; ++b)
    for (std::size_t a = 0; a < da; ++a) {
      Complex amp = psi.amplitudes(full_index(a, b));
      if (amp == Complex{}) continue;
      for (std::size_t a2 = 0; a2 < da; ++a2)
        rho(a, a2) += amp * std::conj(psi.amplitudes(full_index(a2, b)));
    }
  return rho;
}

// Von Neumann entropy in nats.
inline double von_neumann_entropy(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
  double s = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    double lambda = solver.eigenvalues()(k);
    if (lambda > 1e-15) s -= lambda * std::log(lambda);
  }
  return s;
}

// S(rho_A) + S(rho_B) - S(rho_AB); zero for product states. For a pure
// global state S(rho_AB) = 0 and this is 2 S(rho_A).
inline double mutual_information(const QuantumState& psi,
                                 const std::vector<int>& partition) {
  if (partition.empty() ||
      partition.size() >= static_cast<std::size_t>(psi.n_qubits))
    throw Error(ErrorKind::invalid_input,
                "partition must be a nonempty proper subset");
  std::vector<int> complement;
  for (int q = 0; q < psi.n_qubits; ++q)
    if (std::find(partition.begin(), partition.end(), q) == partition.end())
      complement.push_back(q);
  double sa = von_neumann_entropy(reduced_density(psi, partition));
  double sb = von_neumann_entropy(reduced_density(psi, complement));
  return std::max(0.0, sa + sb);  // S(rho_AB) = 0, psi pure
}

// Mutual information between two disjoint subsets of a pure state; the
// remaining qubits are traced out first, so S(rho_AB) need not vanish.
inline double mutual_information(const QuantumState& psi,
                                 const std::vector<int>& part_a,
                                 const std::vector<int>& part_b) {
  std::vector<int> joint = part_a;
  joint.insert(joint.end(), part_b.begin(), part_b.end());
  double sa = von_neumann_entropy(reduced_density(psi, part_a));
  double sb = von_neumann_entropy(reduced_density(psi, part_b));
  double sab = von_neumann_entropy(reduced_density(psi, joint));
  return std::max(0.0, sa + sb - sab);
}

}  // namespace chargeq
