#pragma once

#include "povmcoh/linalg.hpp"

#include <vector>

namespace povmcoh {

// Standard-form semidefinite program over a block-diagonal PSD variable:
//   optimize   <C, X>
//   subject to <A_k, X> = b_k,  X >= 0 (blockwise).
// All coefficient blocks are real symmetric; an omitted (0x0) block in a
// constraint means the zero matrix.
struct SdpProblem {
  enum class Sense { minimize, maximize };

  struct Constraint {
    std::vector<RMatrix> blocks;
    double rhs = 0.0;
  };

  std::vector<int> block_dims;
  std::vector<RMatrix> objective;
  std::vector<Constraint> constraints;
  Sense sense = Sense::minimize;
};

struct SdpOptions {
  double tol = 1e-9;
  int max_iterations = 200;
  double step_fraction = 0.98;
  bool verbose = false; // per-iteration trace on stderr
};

enum class SdpStatus { optimal, primal_infeasible, dual_infeasible, max_iterations };

struct SdpSolution {
  SdpStatus status = SdpStatus::max_iterations;
  std::vector<RMatrix> X; // primal blocks
  std::vector<RMatrix> S; // dual slack blocks
  RVector y;              // dual multipliers, one per constraint
  double primal_objective = 0.0; // in the user's sense
  double dual_objective = 0.0;
  double primal_residual = 0.0; // ||b - A(X)|| / (1 + ||b||)
  double dual_residual = 0.0;   // ||C - S - A*(y)||_F / (1 + ||C||_F)
  double gap = 0.0;             // |<C,X> - b'y| / (1 + |pobj| + |dobj|)
  int iterations = 0;
  // Scaled certificate of primal infeasibility (improving dual ray), when
  // status == primal_infeasible.
  RVector infeasibility_ray;
};

/// Primal-dual interior-point solve (Nesterov-Todd scaling, Mehrotra
/// predictor-corrector, dense Schur complement).
SdpSolution solve(const SdpProblem &problem, const SdpOptions &options = {});

/// [[Re H, -Im H], [Im H, Re H]] embedding of a Hermitian matrix.
/// The embedding doubles the spectrum, so H >= 0 iff the image is PSD;
/// Hilbert-Schmidt inner products pick up a factor 2, which callers divide
/// out when reading scalars back.
RMatrix complex_to_real_embed(const CMatrix &h, double tol = 1e-9);

/// Recovers the Hermitian matrix from (the structured part of) a real
/// embedding produced by complex_to_real_embed.
CMatrix real_embed_to_complex(const RMatrix &m);

// Affine subspace {x : A x = b} described by a particular solution and an
// orthonormal null-space basis (columns).
struct AffineSubspace {
  bool consistent = false;
  double residual = 0.0; // ||A x0 - b||_inf
  int rank = 0;
  RVector particular;
  RMatrix null_basis;
};

/// Least-squares analysis of a dense linear system: rank, min-norm
/// particular solution, and an orthonormal basis of the null space.
/// Singular values below rel_tol * max(sigma_max, 1) are treated as zero.
AffineSubspace affine_subspace(const RMatrix &a, const RVector &b,
                               double rel_tol = 1e-10);

} // namespace povmcoh
