#include "povmcoh/naimark.hpp"

#include "povmcoh/random.hpp"

#include <sstream>

namespace povmcoh {

namespace {

// Completes a d' x d isometry (orthonormal columns) to a d' x d' unitary by
// orthonormalizing a random complement, re-orthogonalized twice.
CMatrix complete_to_unitary(const CMatrix &iso, Rng &rng) {
  const int d_prime = static_cast<int>(iso.rows());
  const int d = static_cast<int>(iso.cols());
  CMatrix u(d_prime, d_prime);
  u.leftCols(d) = iso;
  int filled = d;
  int attempts = 0;
  while (filled < d_prime) {
    if (++attempts > 8 * d_prime)
      throw std::runtime_error("complete_to_unitary: completion failed");
    CVector v = random_ginibre(d_prime, 1, rng).col(0);
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < filled; ++j)
        v -= u.col(j).dot(v) * u.col(j);
    if (v.norm() < 1e-8)
      continue;
    v /= v.norm();
    // Phase convention: first significant component real and positive.
    for (int i = 0; i < d_prime; ++i)
      if (std::abs(v(i)) > 0.5 / std::sqrt(double(d_prime))) {
        v *= std::conj(v(i)) / std::abs(v(i));
        break;
      }
    u.col(filled++) = v;
  }
  return u;
}

// P_i = Q^dag D_i Q for the coordinate-block projectors D_i given by
// block_sizes; Q has the stacked isometry as its first d columns.
std::vector<CMatrix> pullback_projectors(const CMatrix &q,
                                         const std::vector<int> &block_sizes) {
  const int d_prime = static_cast<int>(q.rows());
  std::vector<CMatrix> projectors;
  int offset = 0;
  for (int size : block_sizes) {
    // rows [offset, offset+size) of Q span the block
    const CMatrix rows = q.middleRows(offset, size);
    CMatrix p = rows.adjoint() * rows;
    projectors.push_back(0.5 * (p + p.adjoint()));
    offset += size;
    (void)d_prime;
  }
  return projectors;
}

} // namespace

std::string to_string(ExtensionKind kind) {
  return kind == ExtensionKind::canonical ? "canonical" : "minimal";
}

NaimarkExtension canonical_extension(const MeasurementOperators &m,
                                     std::uint64_t seed) {
  const int d = m.dim();
  const int n = m.outcomes();
  if (d == 0 || n == 0)
    throw ValidationError("canonical_extension: empty measurement operators");
  CMatrix completeness = CMatrix::Zero(d, d);
  for (const auto &a : m.ops) {
    if (a.rows() != d || a.cols() != d)
      throw ValidationError("canonical_extension: operator dimension mismatch");
    completeness += a.adjoint() * a;
  }
  if ((completeness - CMatrix::Identity(d, d)).norm() > 1e-8 * d)
    throw ValidationError("canonical_extension: sum A_i^dag A_i != 1");

  CMatrix iso(n * d, d);
  for (int i = 0; i < n; ++i)
    iso.middleRows(i * d, d) = m.ops[i];

  Rng rng(seed);
  const CMatrix v = complete_to_unitary(iso, rng);

  NaimarkExtension x;
  x.d = d;
  x.d_prime = n * d;
  x.kind = ExtensionKind::canonical;
  x.projectors = pullback_projectors(v, std::vector<int>(n, d));
  return x;
}

NaimarkExtension minimal_extension(const Povm &p, std::uint64_t seed) {
  PovmDiagnostics diag = validate(p);
  if (!diag.ok)
    throw ValidationError("minimal_extension: invalid POVM: " + diag.message);

  const int d = p.dim();
  std::vector<int> block_sizes;
  std::vector<CMatrix> blocks;
  int d_prime = 0;
  for (const auto &e : p.effects()) {
    HermEig eig = eig_hermitian(e);
    int rank = 0;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
      if (eig.eigenvalues(k) > kHermTol)
        ++rank;
    CMatrix b(rank, d);
    for (int k = 0; k < rank; ++k)
      b.row(k) = std::sqrt(eig.eigenvalues(k)) * eig.eigenvectors.col(k).adjoint();
    block_sizes.push_back(rank);
    blocks.push_back(std::move(b));
    d_prime += rank;
  }
  if (d_prime < d)
    throw ValidationError("minimal_extension: total effect rank below dimension");

  CMatrix iso(d_prime, d);
  int offset = 0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    iso.middleRows(offset, block_sizes[i]) = blocks[i];
    offset += block_sizes[i];
  }

  Rng rng(seed);
  const CMatrix q = complete_to_unitary(iso, rng);

  NaimarkExtension x;
  x.d = d;
  x.d_prime = d_prime;
  x.kind = ExtensionKind::minimal;
  x.projectors = pullback_projectors(q, block_sizes);
  return x;
}

ExtensionDiagnostics validate_extension(const NaimarkExtension &x, const Povm &p,
                                        double tol) {
  ExtensionDiagnostics diag;
  std::ostringstream msg;
  if (x.outcomes() != p.outcomes() || x.d != p.dim()) {
    diag.message = "outcome count or dimension mismatch";
    return diag;
  }
  const int n = x.outcomes();
  CMatrix sum = CMatrix::Zero(x.d_prime, x.d_prime);
  for (int i = 0; i < n; ++i) {
    const CMatrix &pi = x.projectors[i];
    diag.hermiticity_residual =
        std::max(diag.hermiticity_residual, hermiticity_residual(pi));
    for (int j = 0; j < n; ++j) {
      const CMatrix prod = pi * x.projectors[j];
      const CMatrix expect = (i == j) ? x.projectors[j]
                                      : CMatrix::Zero(x.d_prime, x.d_prime);
      diag.projector_residual =
          std::max(diag.projector_residual, (prod - expect).norm());
    }
    diag.block_residual = std::max(
        diag.block_residual,
        (pi.topLeftCorner(x.d, x.d) - p.effect(i)).norm());
    sum += pi;
  }
  diag.completeness_residual =
      (sum - CMatrix::Identity(x.d_prime, x.d_prime)).norm();
  diag.max_residual =
      std::max({diag.projector_residual, diag.hermiticity_residual,
                diag.completeness_residual, diag.block_residual});
  diag.ok = diag.max_residual <= tol * x.d_prime;
  if (!diag.ok) {
    if (diag.projector_residual > tol * x.d_prime)
      msg << "projector algebra residual " << diag.projector_residual << "; ";
    if (diag.completeness_residual > tol * x.d_prime)
      msg << "completeness residual " << diag.completeness_residual << "; ";
    if (diag.block_residual > tol * x.d_prime)
      msg << "embedded block mismatch " << diag.block_residual << "; ";
  }
  diag.message = diag.ok ? "ok" : msg.str();
  return diag;
}

DensityMatrix embed_state(const DensityMatrix &rho, const NaimarkExtension &x) {
  if (rho.dim() != x.d)
    throw ValidationError("embed_state: state dimension does not match extension");
  return DensityMatrix(direct_sum_embed(rho.matrix(), x.d_prime));
}

} // namespace povmcoh
