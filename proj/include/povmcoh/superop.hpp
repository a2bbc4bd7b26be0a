#pragma once

#include "povmcoh/naimark.hpp"

#include <vector>

namespace povmcoh {

// All superoperator matrices use the lexicographic matrix-unit basis
// B_(i,j) = |i><j| with (i,j) ordered row-major, i.e. vec stacks rows.

/// vec(X) in the row-major matrix-unit basis.
CVector vec(const CMatrix &x);
/// Inverse of vec for a square operator of dimension dim.
CMatrix unvec(const CVector &v, int dim);

// Transfer (process) matrix of a superoperator: column beta holds
// vec(Lambda[B_beta]), so that m * vec(X) = vec(Lambda[X]).
struct ProcessMatrix {
  int dim = 0; // dimension of the underlying Hilbert space
  CMatrix m;   // dim^2 x dim^2
};

// Choi matrix on H (x) H, normalized so that trace-preserving maps satisfy
// tr_1 J = 1/dim (partial trace over the FIRST tensor factor).
struct ChoiMatrix {
  int dim = 0;
  CMatrix m; // dim^2 x dim^2
};

ProcessMatrix process_from_kraus(const std::vector<CMatrix> &kraus);

CMatrix apply_process(const ProcessMatrix &p, const CMatrix &x);

/// Row-reshuffling involution X^R_{(i,j),(k,l)} = X_{(i,k),(j,l)}.
CMatrix reshuffle(const CMatrix &x);

/// ChoiMatrix J with process = dim * J^R.
ChoiMatrix choi_from_process(const ProcessMatrix &p);
ProcessMatrix process_from_choi(const ChoiMatrix &j);

/// tr_1: trace over the first tensor factor of a dim*dim square matrix.
CMatrix partial_trace_first(const CMatrix &x, int dim);

struct CptpCheck {
  bool cptp = false;
  double min_choi_eigenvalue = 0.0;
  double trace_preservation_residual = 0.0; // ||tr_1 J - 1/dim||_F
};

CptpCheck is_cptp(const ProcessMatrix &p, double tol = 1e-7);

/// Transfer matrix of the block-dephasing map of an extension.
ProcessMatrix dephasing_superop(const NaimarkExtension &x);

struct EmbeddingSuperops {
  CMatrix e_hat;     // d'^2 x d^2, vec(rho) -> vec(rho + 0)
  CMatrix omega_hat; // d'^2 x d'^2, transfer of X -> Pi_E X Pi_E
};

EmbeddingSuperops embedding_superops(const NaimarkExtension &x);

/// Block-incoherence test on transfer matrices:
/// Lambda Delta = Delta Lambda Delta within tol (Frobenius, relative).
bool is_block_incoherent(const ProcessMatrix &lambda, const ProcessMatrix &delta,
                         double tol = 1e-9);

} // namespace povmcoh
