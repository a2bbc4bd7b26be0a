#pragma once

#include "povmcoh/naimark.hpp"

#include <cstdint>

namespace povmcoh {

// Relative-entropy coherence of a state with respect to a POVM, together
// with the pieces of its outcome decomposition:
// value = H(probs) + sum_i probs_i * branch_entropies_i - state_entropy.
struct CoherenceReport {
  double value = 0.0;
  RVector probs;
  std::vector<double> branch_entropies;
  double state_entropy = 0.0;
};

/// Block-dephasing map rho' -> sum_i P_i rho' P_i.
CMatrix block_dephase(const CMatrix &rho_prime,
                      const std::vector<CMatrix> &projectors);
DensityMatrix block_dephase(const DensityMatrix &rho_prime,
                            const NaimarkExtension &x);

/// Relative entropy of block coherence S(Delta[rho']) - S(rho') in bits.
double c_rel_block(const DensityMatrix &rho_prime,
                   const std::vector<CMatrix> &projectors);
double c_rel_block(const DensityMatrix &rho_prime, const NaimarkExtension &x);

/// Relative entropy of coherence of a system state with respect to a POVM,
/// evaluated with the canonical measurement operators A_i = sqrt(E_i).
/// Branch terms with outcome probability below 1e-12 contribute zero.
CoherenceReport c_rel_povm(const DensityMatrix &rho, const Povm &p);

struct IncoherenceCheck {
  bool incoherent = false;
  double max_residual = 0.0; // max_{i != j} ||E_i rho E_j||_F
};

/// Zero-coherence test: rho is incoherent for the POVM iff E_i rho E_j = 0
/// for all i != j.
IncoherenceCheck is_povm_incoherent(const DensityMatrix &rho, const Povm &p,
                                    double tol = 1e-8);

struct MinCoherenceResult {
  BlochVector r;
  double value = 0.0;
  double stationarity = 0.0; // norm of the projected gradient step
  int iterations = 0;
  bool converged = false;
};

/// Minimizes the coherence over the Bloch ball by projected gradient
/// descent with central finite-difference gradients. The objective is
/// convex, so any stationary point is a global minimum.
MinCoherenceResult min_coherence_qubit(const Povm &p, int max_iterations = 5000,
                                       double grad_tol = 1e-7);

struct MaxCoherenceResult {
  PureState state;
  double value = 0.0;
};

/// Maximizes the coherence over pure states: Fibonacci sphere grid plus
/// Nelder-Mead refinement for qubits, random restarts for small d > 2.
MaxCoherenceResult max_coherence_pure(const Povm &p, int grid_density = 2000,
                                      std::uint64_t seed = 0);

} // namespace povmcoh
