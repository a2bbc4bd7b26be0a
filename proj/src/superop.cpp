#include "povmcoh/superop.hpp"

#include <cmath>

namespace povmcoh {

namespace {

int square_side(const CMatrix &x, const char *who) {
  if (x.rows() != x.cols())
    throw ValidationError(std::string(who) + ": matrix must be square");
  const int side = static_cast<int>(std::lround(std::sqrt(double(x.rows()))));
  if (side * side != x.rows())
    throw ValidationError(std::string(who) +
                          ": dimension is not a perfect square");
  return side;
}

// Kronecker product; with row-major vec, vec(A X B^T) = (A (x) B) vec(X).
CMatrix kron(const CMatrix &a, const CMatrix &b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

} // namespace

CVector vec(const CMatrix &x) {
  CVector v(x.rows() * x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      v(i * x.cols() + j) = x(i, j);
  return v;
}

CMatrix unvec(const CVector &v, int dim) {
  if (v.size() != Eigen::Index(dim) * dim)
    throw ValidationError("unvec: length does not match dimension");
  CMatrix x(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      x(i, j) = v(i * dim + j);
  return x;
}

ProcessMatrix process_from_kraus(const std::vector<CMatrix> &kraus) {
  if (kraus.empty())
    throw ValidationError("process_from_kraus: empty Kraus list");
  const int d = static_cast<int>(kraus[0].rows());
  ProcessMatrix p;
  p.dim = d;
  p.m = CMatrix::Zero(d * d, d * d);
  for (const auto &k : kraus) {
    if (k.rows() != d || k.cols() != d)
      throw ValidationError("process_from_kraus: Kraus dimension mismatch");
    p.m += kron(k, k.conjugate());
  }
  return p;
}

CMatrix apply_process(const ProcessMatrix &p, const CMatrix &x) {
  if (x.rows() != p.dim || x.cols() != p.dim)
    throw ValidationError("apply_process: dimension mismatch");
  return unvec(p.m * vec(x), p.dim);
}

CMatrix reshuffle(const CMatrix &x) {
  const int d = square_side(x, "reshuffle");
  CMatrix out(x.rows(), x.cols());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          out(i * d + j, k * d + l) = x(i * d + k, j * d + l);
  return out;
}

ChoiMatrix choi_from_process(const ProcessMatrix &p) {
  ChoiMatrix j;
  j.dim = p.dim;
  j.m = reshuffle(p.m) / double(p.dim);
  return j;
}

ProcessMatrix process_from_choi(const ChoiMatrix &j) {
  ProcessMatrix p;
  p.dim = j.dim;
  p.m = double(j.dim) * reshuffle(j.m);
  return p;
}

CMatrix partial_trace_first(const CMatrix &x, int dim) {
  if (x.rows() != Eigen::Index(dim) * dim || x.cols() != x.rows())
    throw ValidationError("partial_trace_first: dimension mismatch");
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n)
    for (int q = 0; q < dim; ++q)
      for (int m = 0; m < dim; ++m)
        out(n, q) += x(m * dim + n, m * dim + q);
  return out;
}

CptpCheck is_cptp(const ProcessMatrix &p, double tol) {
  const ChoiMatrix j = choi_from_process(p);
  CptpCheck check;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (j.m + j.m.adjoint()));
  check.min_choi_eigenvalue = solver.eigenvalues().minCoeff();
  const double herm = hermiticity_residual(j.m);
  check.trace_preservation_residual =
      (partial_trace_first(j.m, p.dim) -
       CMatrix::Identity(p.dim, p.dim) / double(p.dim))
          .norm();
  check.cptp = herm <= tol && check.min_choi_eigenvalue >= -tol &&
               check.trace_preservation_residual <= tol;
  return check;
}

ProcessMatrix dephasing_superop(const NaimarkExtension &x) {
  ProcessMatrix delta;
  delta.dim = x.d_prime;
  delta.m = CMatrix::Zero(x.d_prime * x.d_prime, x.d_prime * x.d_prime);
  for (const auto &p : x.projectors)
    delta.m += kron(p, p.conjugate());
  return delta;
}

EmbeddingSuperops embedding_superops(const NaimarkExtension &x) {
  const int d = x.d;
  const int dp = x.d_prime;
  EmbeddingSuperops ops;
  ops.e_hat = CMatrix::Zero(dp * dp, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      ops.e_hat(i * dp + j, i * d + j) = 1.0;
  const CMatrix pi = direct_sum_embed(CMatrix::Identity(d, d), dp);
  ops.omega_hat = kron(pi, pi.conjugate());
  return ops;
}

bool is_block_incoherent(const ProcessMatrix &lambda, const ProcessMatrix &delta,
                         double tol) {
  const CMatrix lhs = lambda.m * delta.m;
  const CMatrix rhs = delta.m * lambda.m * delta.m;
  return (lhs - rhs).norm() <= tol * std::max(1.0, lhs.norm());
}

} // namespace povmcoh
