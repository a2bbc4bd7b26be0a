#include "povmcoh/pic.hpp"

#include <cmath>
#include <sstream>

namespace povmcoh {

namespace {

// Real coordinates of Hermitian N x N matrices: diagonal first, then
// (sqrt(2) Re, sqrt(2) Im) per off-diagonal pair; an isometry for the
// Hilbert-Schmidt inner product.
struct HermCoords {
  int n = 0;
  int dim() const { return n * n; }

  int off_base(int i, int j) const { // i < j
    return n + 2 * (i * n - i * (i + 1) / 2 + (j - i - 1));
  }

  RVector to_coords(const CMatrix &m) const {
    RVector c(dim());
    for (int i = 0; i < n; ++i)
      c(i) = m(i, i).real();
    const double s = std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        c(off_base(i, j)) = s * m(i, j).real();
        c(off_base(i, j) + 1) = s * m(i, j).imag();
      }
    return c;
  }

  CMatrix from_coords(const RVector &c) const {
    CMatrix m(n, n);
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
      m(i, i) = c(i);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        m(i, j) = s * Complex(c(off_base(i, j)), c(off_base(i, j) + 1));
        m(j, i) = std::conj(m(i, j));
      }
    return m;
  }
};

struct RowBatch {
  std::vector<RVector> rows;
  std::vector<double> rhs;

  void add_functional(const HermCoords &coords, const CMatrix &g, Complex c) {
    const CMatrix g_h = 0.5 * (g + g.adjoint());
    const CMatrix g_a = (g - g.adjoint()) / Complex(0, 2);
    const RVector row_h = coords.to_coords(g_h);
    const RVector row_a = coords.to_coords(g_a);
    if (row_h.norm() > 1e-13 || std::abs(c.real()) > 1e-13) {
      rows.push_back(row_h);
      rhs.push_back(c.real());
    }
    if (row_a.norm() > 1e-13 || std::abs(c.imag()) > 1e-13) {
      rows.push_back(row_a);
      rhs.push_back(c.imag());
    }
  }

  RMatrix matrix(int n_cols) const {
    RMatrix a(rows.size(), n_cols);
    for (size_t i = 0; i < rows.size(); ++i)
      a.row(i) = rows[i].transpose();
    return a;
  }
  RVector rhs_vector() const {
    RVector b(rhs.size());
    for (size_t i = 0; i < rhs.size(); ++i)
      b(i) = rhs[i];
    return b;
  }
};

CMatrix kron(const CMatrix &a, const CMatrix &b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Single J-entry functional J_{pq} = value: tr[G J] with G = |q><p|.
void add_entry_row(RowBatch &batch, const HermCoords &coords, int p, int q,
                   Complex value, int n) {
  CMatrix g = CMatrix::Zero(n, n);
  g(q, p) = 1.0;
  batch.add_functional(coords, g, value);
}

// trace-preservation rows: sum_m J_{(m,n),(m,q)} = delta_nq / d'.
void add_trace_rows(RowBatch &batch, const HermCoords &coords, int dp) {
  for (int n_idx = 0; n_idx < dp; ++n_idx)
    for (int q = n_idx; q < dp; ++q) {
      CMatrix g = CMatrix::Zero(dp * dp, dp * dp);
      for (int m = 0; m < dp; ++m)
        g(m * dp + q, m * dp + n_idx) = 1.0;
      batch.add_functional(coords, g,
                           n_idx == q ? Complex(1.0 / dp, 0) : Complex(0, 0));
    }
}

// Block-incoherence rows: u^dag J^R v = 0 for u in ker(Delta), v in im(Delta).
void add_bic_rows(RowBatch &batch, const HermCoords &coords,
                  const ProcessMatrix &delta) {
  const int n2 = static_cast<int>(delta.m.rows());
  const int dp = delta.dim;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (delta.m + delta.m.adjoint()));
  std::vector<CVector> kernel, image;
  for (int i = 0; i < n2; ++i) {
    if (eig.eigenvalues()(i) > 0.5)
      image.push_back(eig.eigenvectors().col(i));
    else
      kernel.push_back(eig.eigenvectors().col(i));
  }
  for (const auto &u : kernel)
    for (const auto &v : image) {
      // phi(J) = sum conj(U_ij) V_kl J_{(i,k),(j,l)} => F = conj(U) (x) V.
      const CMatrix f = kron(unvec(u, dp).conjugate(), unvec(v, dp));
      batch.add_functional(coords, f.transpose(), Complex(0, 0));
    }
}

// Subspace-preservation rows: J_{(i,k),(j,l)} = 0 for embedded column pairs
// (k, l < d) and non-embedded row pairs.
void add_subspace_rows(RowBatch &batch, const HermCoords &coords, int d, int dp) {
  for (int i = 0; i < dp; ++i)
    for (int j = 0; j < dp; ++j) {
      if (i < d && j < d)
        continue;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          add_entry_row(batch, coords, i * dp + k, j * dp + l, Complex(0, 0),
                        dp * dp);
    }
}

// Any PSD Choi of a subspace-preserving channel annihilates the coordinates
// |i> (x) |k> with k < d <= i; pinning those rows keeps the verdict intact
// and lets the PSD block act on the complement only.
void add_forced_kernel_rows(RowBatch &batch, const HermCoords &coords, int d,
                            int dp) {
  for (int i = d; i < dp; ++i)
    for (int k = 0; k < d; ++k) {
      const int u = i * dp + k;
      for (int p = 0; p <= u; ++p)
        add_entry_row(batch, coords, p, u, Complex(0, 0), dp * dp);
    }
}

std::vector<int> reduced_coordinates(int d, int dp) {
  std::vector<int> keep;
  for (int i = 0; i < dp; ++i)
    for (int k = 0; k < dp; ++k)
      if (!(i >= d && k < d))
        keep.push_back(i * dp + k);
  return keep;
}

CMatrix restrict_to(const CMatrix &m, const std::vector<int> &idx) {
  CMatrix out(idx.size(), idx.size());
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = 0; b < idx.size(); ++b)
      out(a, b) = m(idx[a], idx[b]);
  return out;
}

CMatrix expand_from(const CMatrix &m, const std::vector<int> &idx, int n) {
  CMatrix out = CMatrix::Zero(n, n);
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = 0; b < idx.size(); ++b)
      out(idx[a], idx[b]) = m(a, b);
  return out;
}

// Rows of the target-channel family: J_{(a,c),(b,e)} = Lambda_{(a,b),(c,e)}/d'.
RowBatch target_rows(const HermCoords &coords, const ProcessMatrix &target,
                     int d, int dp) {
  RowBatch batch;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c0 = 0; c0 < d; ++c0)
        for (int e = 0; e < d; ++e)
          add_entry_row(batch, coords, (a * dp + c0), (b * dp + e),
                        target.m(a * d + b, c0 * d + e) / double(dp), dp * dp);
  return batch;
}

} // namespace

PicContext::PicContext(const NaimarkExtension &x) : ext_(x) {
  const int dp = x.d_prime;
  HermCoords coords{dp * dp};
  const ProcessMatrix delta = dephasing_superop(x);

  RowBatch batch;
  add_trace_rows(batch, coords, dp);
  add_bic_rows(batch, coords, delta);
  add_subspace_rows(batch, coords, x.d, dp);
  add_forced_kernel_rows(batch, coords, x.d, dp);

  common_ = affine_subspace(batch.matrix(coords.dim()), batch.rhs_vector());
  if (!common_.consistent)
    throw std::runtime_error(
        "PicContext: channel constraint system is inconsistent");
  reduced_ = reduced_coordinates(x.d, dp);
}

CMatrix PicContext::from_coords(const RVector &coords) const {
  HermCoords hc{ext_.d_prime * ext_.d_prime};
  return hc.from_coords(coords);
}

RVector PicContext::to_coords(const CMatrix &j) const {
  HermCoords hc{ext_.d_prime * ext_.d_prime};
  return hc.to_coords(j);
}

namespace {

struct ReducedAffine {
  bool consistent = false;
  CMatrix j0;                 // particular solution (full space)
  std::vector<CMatrix> basis; // Hermitian null directions (full space)
};

// Intersects the context affine family with extra rows, staying in the
// null-space coordinates so the large decomposition is not repeated.
ReducedAffine intersect(const PicContext &ctx, const RowBatch &extra) {
  const auto &common = ctx.common();
  const int nu = static_cast<int>(common.null_basis.cols());
  ReducedAffine out;
  if (extra.rows.empty()) {
    out.consistent = true;
    out.j0 = ctx.from_coords(common.particular);
    for (int j = 0; j < nu; ++j)
      out.basis.push_back(ctx.from_coords(common.null_basis.col(j)));
    return out;
  }
  const int dimc = static_cast<int>(common.particular.size());
  RMatrix t = extra.matrix(dimc);
  RVector rhs = extra.rhs_vector();
  const RMatrix tz = t * common.null_basis;
  const RVector rz = rhs - t * common.particular;
  AffineSubspace inner = affine_subspace(tz, rz);
  if (!inner.consistent)
    return out;
  out.consistent = true;
  const RVector x0 = common.particular + common.null_basis * inner.particular;
  out.j0 = ctx.from_coords(x0);
  for (int j = 0; j < inner.null_basis.cols(); ++j)
    out.basis.push_back(ctx.from_coords(
        RVector(common.null_basis * inner.null_basis.col(j))));
  return out;
}

// max t  s.t.  J in affine family, J - t 1 >= 0 (on the reduced block),
// dualized so the solver sees a primal with strict interior.
SdpSolution solve_slack_sdp(const ReducedAffine &affine,
                            const std::vector<int> &reduced,
                            const PicOptions &options, double *slack,
                            CMatrix *j_opt) {
  const int r = static_cast<int>(reduced.size());
  const int nu = static_cast<int>(affine.basis.size());

  SdpProblem prob;
  prob.block_dims = {2 * r};
  prob.objective = {complex_to_real_embed(restrict_to(affine.j0, reduced))};
  prob.sense = SdpProblem::Sense::minimize;
  prob.constraints.reserve(nu + 1);
  for (int j = 0; j < nu; ++j) {
    SdpProblem::Constraint con;
    con.blocks = {complex_to_real_embed(restrict_to(affine.basis[j], reduced))};
    con.rhs = 0.0;
    prob.constraints.push_back(std::move(con));
  }
  SdpProblem::Constraint trace_con;
  trace_con.blocks = {RMatrix::Identity(2 * r, 2 * r)};
  trace_con.rhs = 1.0;
  prob.constraints.push_back(std::move(trace_con));

  SdpOptions sopt;
  sopt.tol = options.solver_tol;
  sopt.max_iterations = options.max_iterations;
  sopt.verbose = options.verbose;
  SdpSolution sol = solve(prob, sopt);

  *slack = sol.dual_objective;
  if (j_opt) {
    // S = embed(J(y)) - y_t 1 on the reduced block.
    const CMatrix s = real_embed_to_complex(sol.S[0]);
    const CMatrix j_red =
        s + sol.y(nu) * CMatrix::Identity(r, r);
    *j_opt = expand_from(j_red, reduced,
                         static_cast<int>(affine.j0.rows()));
  }
  return sol;
}

} // namespace

PicVerdict pic_feasibility(const ProcessMatrix &target, const PicContext &ctx,
                           const PicOptions &options) {
  const NaimarkExtension &x = ctx.extension();
  if (target.dim != x.d)
    throw ValidationError("pic_feasibility: target dimension mismatch");
  const CptpCheck cptp = is_cptp(target);
  if (!cptp.cptp) {
    std::ostringstream msg;
    msg << "pic_feasibility: target is not CPTP (min Choi eigenvalue "
        << cptp.min_choi_eigenvalue << ", TP residual "
        << cptp.trace_preservation_residual << ")";
    throw ValidationError(msg.str());
  }

  HermCoords coords{x.d_prime * x.d_prime};
  const RowBatch rows = target_rows(coords, target, x.d, x.d_prime);
  const ReducedAffine affine = intersect(ctx, rows);

  PicVerdict verdict;
  if (!affine.consistent) {
    // The linear system alone rules the channel out.
    verdict.feasible = false;
    verdict.slack = -std::numeric_limits<double>::infinity();
    verdict.note = "target equations inconsistent with the channel constraints";
    return verdict;
  }

  double slack = 0.0;
  CMatrix j_opt;
  SdpSolution sol =
      solve_slack_sdp(affine, ctx.reduced_indices(), options, &slack, &j_opt);
  verdict.slack = slack;
  verdict.feasible = slack >= -options.feas_threshold;
  verdict.marginal =
      std::abs(slack + options.feas_threshold) <= 0.5 * options.feas_threshold;
  if (sol.status != SdpStatus::optimal)
    verdict.note = "solver did not reach optimality";
  if (verdict.feasible)
    verdict.choi = ChoiMatrix{x.d_prime, j_opt};
  return verdict;
}

PicVerdict pic_feasibility(const ProcessMatrix &target, const NaimarkExtension &x,
                           const PicOptions &options) {
  PicContext ctx(x);
  return pic_feasibility(target, ctx, options);
}

PicVerdict pic_feasibility(const std::vector<CMatrix> &target_kraus,
                           const NaimarkExtension &x, const PicOptions &options) {
  return pic_feasibility(process_from_kraus(target_kraus), x, options);
}

FmaxResult fmax(const DensityMatrix &rho, const DensityMatrix &sigma,
                const PicContext &ctx, const PicOptions &options) {
  const NaimarkExtension &x = ctx.extension();
  const int d = x.d;
  const int dp = x.d_prime;
  if (rho.dim() != d || sigma.dim() != d)
    throw ValidationError("fmax: state dimension mismatch");

  const ReducedAffine affine = intersect(ctx, RowBatch{});
  const auto &reduced = ctx.reduced_indices();
  const int r = static_cast<int>(reduced.size());
  const int nu = static_cast<int>(affine.basis.size());
  const EmbeddingSuperops emb = embedding_superops(x);
  const CVector vec_rho = vec(rho.matrix());

  auto output_state = [&](const CMatrix &j) {
    const CMatrix lambda_hat =
        double(dp) * emb.e_hat.adjoint() * reshuffle(j) * emb.e_hat;
    const CMatrix m = unvec(CVector(lambda_hat * vec_rho), d);
    return CMatrix(0.5 * (m + m.adjoint()));
  };

  // Dual form: S1 = reduced J(z), S2 = [[sigma, X], [X^dag, Lambda_z[rho]]].
  SdpProblem prob;
  prob.block_dims = {2 * r, 4 * d};
  CMatrix c2 = CMatrix::Zero(2 * d, 2 * d);
  c2.topLeftCorner(d, d) = sigma.matrix();
  c2.bottomRightCorner(d, d) = output_state(affine.j0);
  prob.objective = {complex_to_real_embed(restrict_to(affine.j0, reduced)),
                    complex_to_real_embed(c2)};
  prob.sense = SdpProblem::Sense::minimize;

  for (int j = 0; j < nu; ++j) {
    SdpProblem::Constraint con;
    CMatrix m_j = CMatrix::Zero(2 * d, 2 * d);
    const CMatrix lambda_hat = double(dp) * emb.e_hat.adjoint() *
                               reshuffle(affine.basis[j]) * emb.e_hat;
    CMatrix mj = unvec(CVector(lambda_hat * vec_rho), d);
    m_j.bottomRightCorner(d, d) = 0.5 * (mj + mj.adjoint());
    con.blocks = {
        RMatrix(-complex_to_real_embed(restrict_to(affine.basis[j], reduced))),
        RMatrix(-complex_to_real_embed(m_j))};
    con.rhs = 0.0;
    prob.constraints.push_back(std::move(con));
  }
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int part = 0; part < 2; ++part) {
        CMatrix blk = CMatrix::Zero(2 * d, 2 * d);
        const Complex unit = part == 0 ? Complex(1, 0) : Complex(0, 1);
        blk(p, d + q) = unit;
        blk(d + q, p) = std::conj(unit);
        SdpProblem::Constraint con;
        con.blocks = {RMatrix(), RMatrix(-complex_to_real_embed(blk))};
        con.rhs = (p == q && part == 0) ? 1.0 : 0.0;
        prob.constraints.push_back(std::move(con));
      }

  SdpOptions sopt;
  sopt.tol = options.solver_tol;
  sopt.max_iterations = options.max_iterations;
  sopt.verbose = options.verbose;
  SdpSolution sol = solve(prob, sopt);

  FmaxResult result;
  result.solver_status = sol.status;
  result.value = std::max(0.0, sol.dual_objective);

  CMatrix j_opt = affine.j0;
  for (int j = 0; j < nu; ++j)
    j_opt += sol.y(j) * affine.basis[j];
  result.choi = ChoiMatrix{dp, j_opt};
  result.channel.dim = d;
  result.channel.m =
      double(dp) * emb.e_hat.adjoint() * reshuffle(j_opt) * emb.e_hat;
  return result;
}

double fmax(const DensityMatrix &rho, const DensityMatrix &sigma,
            const NaimarkExtension &x, const PicOptions &options) {
  PicContext ctx(x);
  return fmax(rho, sigma, ctx, options).value;
}

double fidelity_sdp(const DensityMatrix &rho, const DensityMatrix &sigma,
                    const PicOptions &options) {
  if (rho.dim() != sigma.dim())
    throw ValidationError("fidelity_sdp: dimension mismatch");
  const int d = rho.dim();
  SdpProblem prob;
  prob.block_dims = {4 * d};
  CMatrix c = CMatrix::Zero(2 * d, 2 * d);
  c.topLeftCorner(d, d) = rho.matrix();
  c.bottomRightCorner(d, d) = sigma.matrix();
  prob.objective = {complex_to_real_embed(c)};
  prob.sense = SdpProblem::Sense::minimize;
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int part = 0; part < 2; ++part) {
        CMatrix blk = CMatrix::Zero(2 * d, 2 * d);
        const Complex unit = part == 0 ? Complex(1, 0) : Complex(0, 1);
        blk(p, d + q) = unit;
        blk(d + q, p) = std::conj(unit);
        SdpProblem::Constraint con;
        con.blocks = {RMatrix(-complex_to_real_embed(blk))};
        con.rhs = (p == q && part == 0) ? 1.0 : 0.0;
        prob.constraints.push_back(std::move(con));
      }
  SdpOptions sopt;
  sopt.tol = options.solver_tol;
  sopt.max_iterations = options.max_iterations;
  sopt.verbose = options.verbose;
  const SdpSolution sol = solve(prob, sopt);
  return std::max(0.0, sol.dual_objective);
}

} // namespace povmcoh
