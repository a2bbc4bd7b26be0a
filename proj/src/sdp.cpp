#include "povmcoh/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <limits>

namespace povmcoh {

namespace {

using Blocks = std::vector<RMatrix>;

struct Scaling {
  RMatrix g;        // W = G G^T
  RMatrix g_inv;    // G^{-1}
  RMatrix w;        // NT scaling point
  RMatrix v_vecs;   // eigenvectors of V = G^T S G
  RVector v_vals;   // eigenvalues of V
};

Blocks zeros_like(const std::vector<int> &dims) {
  Blocks out;
  out.reserve(dims.size());
  for (int n : dims)
    out.emplace_back(RMatrix::Zero(n, n));
  return out;
}

Blocks identity_like(const std::vector<int> &dims, double scale) {
  Blocks out;
  out.reserve(dims.size());
  for (int n : dims)
    out.emplace_back(scale * RMatrix::Identity(n, n));
  return out;
}

double block_dot(const Blocks &a, const Blocks &b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    sum += a[i].cwiseProduct(b[i]).sum();
  return sum;
}

double block_norm(const Blocks &a) { return std::sqrt(block_dot(a, a)); }

void axpy(Blocks &y, double alpha, const Blocks &x) {
  for (size_t i = 0; i < y.size(); ++i)
    y[i] += alpha * x[i];
}

// Largest alpha with X + alpha D >= 0, via eigenvalues of L^{-1} D L^{-T}.
double step_to_boundary(const RMatrix &x, const RMatrix &d) {
  Eigen::LLT<RMatrix> llt(x);
  if (llt.info() != Eigen::Success) {
    // X touching the boundary; fall back to a conservative estimate
    Eigen::SelfAdjointEigenSolver<RMatrix> ex(x);
    Eigen::SelfAdjointEigenSolver<RMatrix> ed(d);
    const double lx = std::max(ex.eigenvalues().minCoeff(), 1e-300);
    const double ld = ed.eigenvalues().minCoeff();
    return ld >= 0 ? std::numeric_limits<double>::infinity() : lx / (-ld);
  }
  RMatrix l = llt.matrixL();
  RMatrix t = l.triangularView<Eigen::Lower>().solve(d);
  t = l.triangularView<Eigen::Lower>().solve(t.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(0.5 * (t + t.transpose()),
                                             Eigen::EigenvaluesOnly);
  const double lam_min = eig.eigenvalues().minCoeff();
  if (lam_min >= -1e-14)
    return std::numeric_limits<double>::infinity();
  return -1.0 / lam_min;
}

double min_step(const Blocks &x, const Blocks &d) {
  double alpha = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < x.size(); ++i)
    alpha = std::min(alpha, step_to_boundary(x[i], d[i]));
  return alpha;
}

RMatrix symmetrize(const RMatrix &m) { return 0.5 * (m + m.transpose()); }

// Symmetric PSD square root via eigendecomposition.
RMatrix psd_sqrt(const RMatrix &m) {
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(m);
  RVector vals = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().transpose();
}

Scaling nt_scaling(const RMatrix &x, const RMatrix &s) {
  Scaling sc;
  const RMatrix x_half = psd_sqrt(x);
  const RMatrix t = symmetrize(x_half * s * x_half);
  Eigen::SelfAdjointEigenSolver<RMatrix> eig_t(t);
  RVector inv_quarter =
      eig_t.eigenvalues().cwiseMax(1e-280).cwiseInverse().cwiseSqrt();
  const RMatrix t_inv_half = eig_t.eigenvectors() * inv_quarter.asDiagonal() *
                             eig_t.eigenvectors().transpose();
  sc.w = symmetrize(x_half * t_inv_half * x_half);
  // Symmetric square-root factor: immune to Cholesky breakdown at nearly
  // singular scaling points.
  Eigen::SelfAdjointEigenSolver<RMatrix> eig_w(sc.w);
  const RVector w_vals = eig_w.eigenvalues().cwiseMax(1e-140);
  sc.g = eig_w.eigenvectors() * w_vals.cwiseSqrt().asDiagonal() *
         eig_w.eigenvectors().transpose();
  sc.g_inv = eig_w.eigenvectors() * w_vals.cwiseSqrt().cwiseInverse().asDiagonal() *
             eig_w.eigenvectors().transpose();
  const RMatrix v = symmetrize(sc.g.transpose() * s * sc.g);
  Eigen::SelfAdjointEigenSolver<RMatrix> eig_v(v);
  sc.v_vecs = eig_v.eigenvectors();
  sc.v_vals = eig_v.eigenvalues().cwiseMax(1e-140);
  return sc;
}

} // namespace

RMatrix complex_to_real_embed(const CMatrix &h, double tol) {
  if (hermiticity_residual(h) > tol * std::max(1.0, h.norm()))
    throw ValidationError("complex_to_real_embed: matrix is not Hermitian");
  const int n = static_cast<int>(h.rows());
  RMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.bottomRightCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  return symmetrize(out);
}

CMatrix real_embed_to_complex(const RMatrix &m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw ValidationError("real_embed_to_complex: even square matrix required");
  const int n = static_cast<int>(m.rows()) / 2;
  CMatrix out(n, n);
  const RMatrix re = 0.5 * (m.topLeftCorner(n, n) + m.bottomRightCorner(n, n));
  const RMatrix im = 0.5 * (m.bottomLeftCorner(n, n) - m.topRightCorner(n, n));
  out.real() = re;
  out.imag() = im;
  return 0.5 * (out + out.adjoint()).eval();
}

AffineSubspace affine_subspace(const RMatrix &a, const RVector &b,
                               double rel_tol) {
  AffineSubspace out;
  const int n = static_cast<int>(a.cols());
  // Normal-matrix eigendecomposition: cheaper than an SVD of a tall stacked
  // system and accurate enough for the well-separated ranks that arise here.
  RMatrix h = RMatrix::Zero(n, n);
  h.selfadjointView<Eigen::Lower>().rankUpdate(a.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(
      RMatrix(h.selfadjointView<Eigen::Lower>()));
  const RVector lambda = eig.eigenvalues();
  const double sigma_max = std::sqrt(std::max(0.0, lambda.maxCoeff()));
  const double cut = rel_tol * std::max(sigma_max, 1.0);
  // The squared threshold cannot sit below the eigenvalue noise floor of
  // the normal matrix, which scales like eps * n * lambda_max.
  const double noise_floor =
      1e-11 * std::max(1.0, lambda.size() ? lambda.maxCoeff() : 1.0);
  const double lambda_cut = std::max(cut * cut, noise_floor);

  int rank = 0;
  for (int i = 0; i < n; ++i)
    if (lambda(i) > lambda_cut)
      ++rank;
  out.rank = rank;
  out.null_basis = eig.eigenvectors().leftCols(n - rank);

  const RVector atb = a.transpose() * b;
  RVector x0 = RVector::Zero(n);
  for (int i = n - rank; i < n; ++i) {
    const RVector v = eig.eigenvectors().col(i);
    x0 += v * (v.dot(atb) / lambda(i));
  }
  out.particular = x0;
  out.residual = b.size() == 0 ? 0.0 : (a * x0 - b).cwiseAbs().maxCoeff();
  out.consistent =
      out.residual <= 1e-8 * (1.0 + (b.size() ? b.cwiseAbs().maxCoeff() : 0.0));
  return out;
}

SdpSolution solve(const SdpProblem &problem, const SdpOptions &options) {
  const int n_blocks = static_cast<int>(problem.block_dims.size());
  const int m = static_cast<int>(problem.constraints.size());
  if (static_cast<int>(problem.objective.size()) != n_blocks)
    throw ValidationError("sdp: objective block count mismatch");

  const double sense = problem.sense == SdpProblem::Sense::maximize ? -1.0 : 1.0;

  // Normalize storage: every constraint carries a (possibly zero) block per
  // block slot, and all blocks are checked for symmetry.
  Blocks c = zeros_like(problem.block_dims);
  for (int b = 0; b < n_blocks; ++b) {
    const RMatrix &cb = problem.objective[b];
    if (cb.size() != 0) {
      if (cb.rows() != problem.block_dims[b] || cb.cols() != problem.block_dims[b])
        throw ValidationError("sdp: objective block dimension mismatch");
      if ((cb - cb.transpose()).norm() > 1e-10 * std::max(1.0, cb.norm()))
        throw ValidationError("sdp: objective block is not symmetric");
      c[b] = sense * symmetrize(cb);
    }
  }
  std::vector<Blocks> a(m);
  RVector b_vec(m);
  for (int k = 0; k < m; ++k) {
    a[k] = zeros_like(problem.block_dims);
    b_vec(k) = problem.constraints[k].rhs;
    const auto &blocks = problem.constraints[k].blocks;
    if (static_cast<int>(blocks.size()) > n_blocks)
      throw ValidationError("sdp: constraint has too many blocks");
    for (size_t bl = 0; bl < blocks.size(); ++bl) {
      if (blocks[bl].size() == 0)
        continue;
      if (blocks[bl].rows() != problem.block_dims[bl] ||
          blocks[bl].cols() != problem.block_dims[bl])
        throw ValidationError("sdp: constraint block dimension mismatch");
      if ((blocks[bl] - blocks[bl].transpose()).norm() >
          1e-10 * std::max(1.0, blocks[bl].norm()))
        throw ValidationError("sdp: constraint block is not symmetric");
      a[k][bl] = symmetrize(blocks[bl]);
    }
  }

  int n_total = 0;
  for (int d : problem.block_dims)
    n_total += d;

  // Stacked constraint data per block, for Schur assembly by GEMM.
  std::vector<RMatrix> a_stacked(n_blocks);
  for (int bl = 0; bl < n_blocks; ++bl) {
    const int nb = problem.block_dims[bl];
    a_stacked[bl].resize(m, nb * nb);
    for (int k = 0; k < m; ++k)
      a_stacked[bl].row(k) =
          Eigen::Map<const RVector>(a[k][bl].data(), nb * nb).transpose();
  }

  // Initial iterates, scaled to the data size.
  double max_ab = 0.0, norm_c = block_norm(c);
  for (int k = 0; k < m; ++k)
    max_ab = std::max(max_ab,
                      (1.0 + std::abs(b_vec(k))) / (1.0 + block_norm(a[k])));
  const double eta_p = std::max({10.0, std::sqrt(double(n_total)), max_ab});
  double max_a = 0.0;
  for (int k = 0; k < m; ++k)
    max_a = std::max(max_a, block_norm(a[k]));
  const double eta_d =
      std::max({10.0, std::sqrt(double(n_total)), norm_c, max_a});

  Blocks x = identity_like(problem.block_dims, eta_p);
  Blocks s = identity_like(problem.block_dims, eta_d);
  RVector y = RVector::Zero(m);

  SdpSolution sol;
  sol.y = y;

  auto apply_a = [&](const Blocks &v) {
    RVector out(m);
    for (int k = 0; k < m; ++k)
      out(k) = block_dot(a[k], v);
    return out;
  };
  auto apply_at = [&](const RVector &w) {
    Blocks out = zeros_like(problem.block_dims);
    for (int k = 0; k < m; ++k)
      axpy(out, w(k), a[k]);
    return out;
  };

  const double b_scale = 1.0 + (m > 0 ? b_vec.norm() : 0.0);
  const double c_scale = 1.0 + norm_c;

  auto finalize = [&](SdpStatus status, int iters) {
    sol.status = status;
    sol.iterations = iters;
    sol.X = x;
    sol.S = s;
    sol.y = y;
    const double pobj = block_dot(c, x);
    const double dobj = m > 0 ? b_vec.dot(y) : 0.0;
    sol.primal_objective = sense * pobj;
    sol.dual_objective = sense * dobj;
    sol.primal_residual = m > 0 ? (b_vec - apply_a(x)).norm() / b_scale : 0.0;
    Blocks rd = c;
    axpy(rd, -1.0, s);
    {
      Blocks aty = apply_at(y);
      axpy(rd, -1.0, aty);
    }
    sol.dual_residual = block_norm(rd) / c_scale;
    sol.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    return sol;
  };

  if (m == 0) {
    // Unconstrained: X = 0 is optimal unless C has a negative direction.
    x = zeros_like(problem.block_dims);
    for (int bl = 0; bl < n_blocks; ++bl) {
      Eigen::SelfAdjointEigenSolver<RMatrix> eig(c[bl]);
      if (eig.eigenvalues().minCoeff() < -1e-12)
        return finalize(SdpStatus::dual_infeasible, 0);
    }
    s = c;
    return finalize(SdpStatus::optimal, 0);
  }

  Eigen::LLT<RMatrix> schur_llt;
  RMatrix schur(m, m);
  std::vector<RMatrix> y_stacked(n_blocks);

  // Best iterate seen so far; returned if the strict tolerance is never
  // reached but the iterates start to drift at the numerical floor.
  Blocks x_best = x, s_best = s;
  RVector y_best = y;
  double best_metric = std::numeric_limits<double>::infinity();
  int stall_count = 0;
  int last_iter = 0;

  constexpr double kAcceptResidual = 1e-7; // documented solution contract
  constexpr double kAcceptGap = 1e-6;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    last_iter = iter;
    const RVector rp = b_vec - apply_a(x);
    Blocks rd = c;
    axpy(rd, -1.0, s);
    {
      Blocks aty = apply_at(y);
      axpy(rd, -1.0, aty);
    }
    const double mu = block_dot(x, s) / n_total;
    const double pobj = block_dot(c, x);
    const double dobj = b_vec.dot(y);

    const double prim_inf = rp.norm() / b_scale;
    const double dual_inf = block_norm(rd) / c_scale;
    const double rel_gap =
        std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    if (options.verbose)
      std::fprintf(stderr,
                   "sdp iter %3d: pobj=% .6e dobj=% .6e mu=%.2e "
                   "pinf=%.2e dinf=%.2e\n",
                   iter, pobj, dobj, mu, prim_inf, dual_inf);

    const double metric = std::max({prim_inf, dual_inf, rel_gap});
    if (std::isfinite(metric) && metric < 0.8 * best_metric) {
      best_metric = metric;
      x_best = x;
      s_best = s;
      y_best = y;
      stall_count = 0;
    } else {
      ++stall_count;
    }

    if (prim_inf < options.tol && dual_inf < options.tol &&
        (rel_gap < options.tol || mu < options.tol * 1e-2))
      return finalize(SdpStatus::optimal, iter - 1);
    if (stall_count >= 8 || !std::isfinite(metric))
      break; // drifting at the numerical floor

    // Divergence heuristics: an exploding dual objective with a nearly
    // feasible dual ray certifies primal infeasibility, and vice versa.
    if (dobj > 1e8 * std::max(1.0, std::abs(pobj)) && m > 0) {
      Blocks aty = apply_at(y);
      axpy(aty, 1.0, s); // A*(y) + S, should be ~ hom. feasible ray
      Blocks ctest = c;
      if (block_norm(aty) / std::max(1.0, y.norm()) <
          1e-6 * (1.0 + block_norm(ctest))) {
        sol.infeasibility_ray = y / std::max(1.0, y.norm());
        return finalize(SdpStatus::primal_infeasible, iter - 1);
      }
    }
    if (pobj < -1e10 * std::max(1.0, std::abs(dobj)) && prim_inf < 1e-6)
      return finalize(SdpStatus::dual_infeasible, iter - 1);

    // NT scaling and Schur complement M_{kl} = <A_k, W A_l W>.
    std::vector<Scaling> sc(n_blocks);
    for (int bl = 0; bl < n_blocks; ++bl)
      sc[bl] = nt_scaling(x[bl], s[bl]);

    schur.setZero();
    for (int bl = 0; bl < n_blocks; ++bl) {
      const int nb = problem.block_dims[bl];
      y_stacked[bl].resize(m, nb * nb);
      for (int k = 0; k < m; ++k) {
        const RMatrix waw = sc[bl].w * a[k][bl] * sc[bl].w;
        y_stacked[bl].row(k) =
            Eigen::Map<const RVector>(waw.data(), nb * nb).transpose();
      }
      schur.noalias() += a_stacked[bl] * y_stacked[bl].transpose();
    }
    schur = symmetrize(schur);
    double jitter = 0.0;
    schur_llt.compute(schur);
    while (schur_llt.info() != Eigen::Success) {
      jitter = jitter == 0.0 ? 1e-14 * (1.0 + schur.trace() / m) : jitter * 100;
      if (jitter > 1e-4 * (1.0 + schur.trace() / m))
        return finalize(SdpStatus::max_iterations, iter - 1);
      schur_llt.compute(schur + jitter * RMatrix::Identity(m, m));
    }

    auto solve_direction = [&](const Blocks &r_tilde, RVector &dy, Blocks &dx,
                               Blocks &ds) {
      RVector rhs = rp;
      for (int bl = 0; bl < n_blocks; ++bl) {
        const int nb = problem.block_dims[bl];
        const RMatrix diff = sc[bl].w * rd[bl] * sc[bl].w - r_tilde[bl];
        rhs.noalias() +=
            a_stacked[bl] * Eigen::Map<const RVector>(diff.data(), nb * nb);
      }
      dy = schur_llt.solve(rhs);
      ds = rd;
      {
        Blocks atdy = apply_at(dy);
        axpy(ds, -1.0, atdy);
      }
      dx = r_tilde;
      for (int bl = 0; bl < n_blocks; ++bl)
        dx[bl] = symmetrize(dx[bl] - sc[bl].w * ds[bl] * sc[bl].w);
    };

    // Predictor.
    Blocks r_tilde = x;
    for (auto &blk : r_tilde)
      blk = -blk;
    RVector dy_aff;
    Blocks dx_aff, ds_aff;
    solve_direction(r_tilde, dy_aff, dx_aff, ds_aff);

    const double ap_aff = std::min(1.0, min_step(x, dx_aff));
    const double ad_aff = std::min(1.0, min_step(s, ds_aff));
    Blocks x_aff = x, s_aff = s;
    axpy(x_aff, ap_aff, dx_aff);
    axpy(s_aff, ad_aff, ds_aff);
    const double mu_aff = block_dot(x_aff, s_aff) / n_total;
    const double sigma =
        std::clamp(std::pow(mu_aff / mu, 3.0), 1e-8, 1.0 - 1e-8);

    // Corrector: R_hat = sigma mu I - V^2 - H(dX_hat dS_hat), solved through
    // the Lyapunov operator of V in its eigenbasis.
    for (int bl = 0; bl < n_blocks; ++bl) {
      const auto &s_bl = sc[bl];
      const RMatrix dx_hat =
          s_bl.g_inv * dx_aff[bl] * s_bl.g_inv.transpose();
      const RMatrix ds_hat = s_bl.g.transpose() * ds_aff[bl] * s_bl.g;
      RMatrix r_hat = -symmetrize(dx_hat * ds_hat);
      const RMatrix v_sq = s_bl.v_vecs *
                           s_bl.v_vals.cwiseProduct(s_bl.v_vals).asDiagonal() *
                           s_bl.v_vecs.transpose();
      r_hat -= v_sq;
      r_hat += sigma * mu * RMatrix::Identity(r_hat.rows(), r_hat.cols());
      // Lyapunov solve in the eigenbasis of V.
      RMatrix rt = s_bl.v_vecs.transpose() * r_hat * s_bl.v_vecs;
      for (int i = 0; i < rt.rows(); ++i)
        for (int j = 0; j < rt.cols(); ++j)
          rt(i, j) *= 2.0 / (s_bl.v_vals(i) + s_bl.v_vals(j));
      const RMatrix k_mat = s_bl.v_vecs * rt * s_bl.v_vecs.transpose();
      r_tilde[bl] = symmetrize(s_bl.g * k_mat * s_bl.g.transpose());
    }

    RVector dy;
    Blocks dx, ds;
    solve_direction(r_tilde, dy, dx, ds);

    const double gamma =
        std::min(options.step_fraction, 0.9 + 0.09 * std::min(ap_aff, ad_aff));
    const double ap = std::min(1.0, gamma * min_step(x, dx));
    const double ad = std::min(1.0, gamma * min_step(s, ds));

    axpy(x, ap, dx);
    axpy(s, ad, ds);
    y += ad * dy;

    if (!std::isfinite(block_norm(x)) || !std::isfinite(block_norm(s)))
      break;
  }

  x = x_best;
  s = s_best;
  y = y_best;
  const bool acceptable = [&] {
    const double pinf = m > 0 ? (b_vec - apply_a(x)).norm() / b_scale : 0.0;
    Blocks rd = c;
    axpy(rd, -1.0, s);
    Blocks aty = apply_at(y);
    axpy(rd, -1.0, aty);
    const double dinf = block_norm(rd) / c_scale;
    const double pobj = block_dot(c, x);
    const double dobj = b_vec.dot(y);
    const double gap =
        std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    return pinf < kAcceptResidual && dinf < kAcceptResidual && gap < kAcceptGap;
  }();
  return finalize(acceptable ? SdpStatus::optimal : SdpStatus::max_iterations,
                  last_iter);
}

} // namespace povmcoh
