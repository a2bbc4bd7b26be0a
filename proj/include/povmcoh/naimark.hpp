#pragma once

#include "povmcoh/povm.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace povmcoh {

enum class ExtensionKind { canonical, minimal };

std::string to_string(ExtensionKind kind);

// Projective measurement {P_i} on a d'-dimensional space reproducing the
// statistics of a POVM on states embedded into the first d coordinates:
// tr[E_i rho] = tr[P_i (rho + 0)] and E_i + 0 = Pi_E P_i Pi_E.
struct NaimarkExtension {
  int d = 0;
  int d_prime = 0;
  ExtensionKind kind = ExtensionKind::minimal;
  std::vector<CMatrix> projectors;
  // Embedding convention shared by the whole codebase: the system space
  // occupies the FIRST d coordinates of the extension space.
  std::string embedding = "first-d-coordinates";

  int outcomes() const { return static_cast<int>(projectors.size()); }
};

/// Probe-coupling extension built from measurement operators: the stacked
/// isometry [A_1; ...; A_n] is completed to a unitary V and
/// P_i = V^dag D_i V with D_i the projector onto the i-th coordinate block.
/// Every P_i has rank d and d' = n * d.
NaimarkExtension canonical_extension(const MeasurementOperators &m,
                                     std::uint64_t seed = 0);

/// Smallest-dimension extension, d' = sum_i rank E_i. Row blocks
/// B_i = sqrt(lambda_k) v_k^dag over the nonzero eigenpairs of E_i are
/// stacked into an isometry, completed to a unitary, and the P_i are the
/// pullbacks of the coordinate-block projectors.
NaimarkExtension minimal_extension(const Povm &p, std::uint64_t seed = 0);

struct ExtensionDiagnostics {
  bool ok = false;
  double projector_residual = 0.0;   // max ||P_i P_j - delta_ij P_j||_F
  double hermiticity_residual = 0.0; // max ||P_i - P_i^dag||_F
  double completeness_residual = 0.0; // ||sum P_i - 1||_F
  double block_residual = 0.0;       // max ||upper-left block of P_i - E_i||_F
  double max_residual = 0.0;
  std::string message;
};

/// Checks all extension invariants against the POVM it claims to extend.
ExtensionDiagnostics validate_extension(const NaimarkExtension &x, const Povm &p,
                                        double tol = kHermTol);

/// rho -> rho (+) 0 on the extension space.
DensityMatrix embed_state(const DensityMatrix &rho, const NaimarkExtension &x);

} // namespace povmcoh
