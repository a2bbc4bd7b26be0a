#include "povmcoh/coherence.hpp"

#include "povmcoh/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace povmcoh {

namespace {

constexpr double kBranchTol = 1e-12; // outcomes below this are zero outcomes

} // namespace

CMatrix block_dephase(const CMatrix &rho_prime,
                      const std::vector<CMatrix> &projectors) {
  if (projectors.empty())
    throw ValidationError("block_dephase: no projectors");
  if (rho_prime.rows() != projectors[0].rows())
    throw ValidationError("block_dephase: dimension mismatch");
  CMatrix out = CMatrix::Zero(rho_prime.rows(), rho_prime.cols());
  for (const auto &p : projectors)
    out += p * rho_prime * p;
  return out;
}

DensityMatrix block_dephase(const DensityMatrix &rho_prime,
                            const NaimarkExtension &x) {
  return DensityMatrix(block_dephase(rho_prime.matrix(), x.projectors));
}

double c_rel_block(const DensityMatrix &rho_prime,
                   const std::vector<CMatrix> &projectors) {
  const DensityMatrix dephased(block_dephase(rho_prime.matrix(), projectors));
  return von_neumann_entropy(dephased) - von_neumann_entropy(rho_prime);
}

double c_rel_block(const DensityMatrix &rho_prime, const NaimarkExtension &x) {
  if (rho_prime.dim() != x.d_prime)
    throw ValidationError("c_rel_block: state does not live on the extension space");
  return c_rel_block(rho_prime, x.projectors);
}

CoherenceReport c_rel_povm(const DensityMatrix &rho, const Povm &p) {
  if (rho.dim() != p.dim())
    throw ValidationError("c_rel_povm: dimension mismatch");
  const MeasurementOperators kraus = canonical_kraus(p);
  CoherenceReport report;
  report.probs = outcome_probs(p, rho);
  report.state_entropy = von_neumann_entropy(rho);
  report.branch_entropies.assign(p.outcomes(), 0.0);

  double value = shannon_entropy(report.probs) - report.state_entropy;
  for (int i = 0; i < p.outcomes(); ++i) {
    if (report.probs(i) <= kBranchTol)
      continue;
    CMatrix raw = kraus.ops[i] * rho.matrix() * kraus.ops[i].adjoint();
    const DensityMatrix branch(CMatrix(raw / raw.trace().real()));
    report.branch_entropies[i] = von_neumann_entropy(branch);
    value += report.probs(i) * report.branch_entropies[i];
  }
  report.value = value;
  return report;
}

IncoherenceCheck is_povm_incoherent(const DensityMatrix &rho, const Povm &p,
                                    double tol) {
  if (rho.dim() != p.dim())
    throw ValidationError("is_povm_incoherent: dimension mismatch");
  IncoherenceCheck check;
  for (int i = 0; i < p.outcomes(); ++i)
    for (int j = 0; j < p.outcomes(); ++j) {
      if (i == j)
        continue;
      const double res = (p.effect(i) * rho.matrix() * p.effect(j)).norm();
      check.max_residual = std::max(check.max_residual, res);
    }
  check.incoherent = check.max_residual <= tol;
  return check;
}

namespace {

// Coherence as a function of the Bloch vector; probes that land just
// outside the ball (finite-difference steps) are pulled back onto it.
double bloch_objective(const Povm &p, Eigen::Vector3d r) {
  const double n = r.norm();
  if (n > 1.0)
    r /= n * (1.0 + 1e-14);
  return c_rel_povm(bloch_to_density(BlochVector{r}), p).value;
}

Eigen::Vector3d central_difference_gradient(const Povm &p,
                                            const Eigen::Vector3d &r, double h) {
  Eigen::Vector3d g;
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e(k) = h;
    g(k) = (bloch_objective(p, r + e) - bloch_objective(p, r - e)) / (2 * h);
  }
  return g;
}

Eigen::Vector3d project_to_ball(const Eigen::Vector3d &r) {
  const double n = r.norm();
  return n > 1.0 ? Eigen::Vector3d(r / n) : r;
}

} // namespace

MinCoherenceResult min_coherence_qubit(const Povm &p, int max_iterations,
                                       double grad_tol) {
  if (p.dim() != 2)
    throw ValidationError("min_coherence_qubit: POVM must act on a qubit");
  const double h = 1e-6;
  const double armijo = 1e-4;

  Eigen::Vector3d r(0.4, 0.1, 0.2); // fixed interior start
  double f = bloch_objective(p, r);
  MinCoherenceResult result;
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::Vector3d g = central_difference_gradient(p, r, h);
    const Eigen::Vector3d mapped = r - project_to_ball(r - g);
    result.stationarity = mapped.norm();
    result.iterations = it;
    if (result.stationarity < grad_tol) {
      result.converged = true;
      break;
    }
    double step = 1.0;
    bool moved = false;
    while (step > 1e-14) {
      const Eigen::Vector3d cand = project_to_ball(r - step * g);
      const double fc = bloch_objective(p, cand);
      if (fc <= f - armijo * g.dot(r - cand)) {
        r = cand;
        f = fc;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved)
      break; // line search exhausted; gradient is noise-level
  }
  result.r = BlochVector{r};
  result.value = f;
  if (!result.converged) {
    const Eigen::Vector3d g = central_difference_gradient(p, r, h);
    result.stationarity = (r - project_to_ball(r - g)).norm();
    result.converged = result.stationarity < grad_tol;
  }
  return result;
}

namespace {

// Nelder-Mead on a small fixed-dimension parameter vector.
RVector nelder_mead(const std::function<double(const RVector &)> &f, RVector x0,
                    double scale, int max_iter) {
  const int n = static_cast<int>(x0.size());
  std::vector<RVector> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (int i = 0; i < n; ++i)
    simplex[i + 1](i) += scale;
  for (int i = 0; i <= n; ++i)
    values[i] = f(simplex[i]);

  for (int it = 0; it < max_iter; ++it) {
    std::vector<int> order(n + 1);
    for (int i = 0; i <= n; ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    if (values[order[n]] - values[order[0]] < 1e-13)
      break;

    RVector centroid = RVector::Zero(n);
    for (int i = 0; i < n; ++i)
      centroid += simplex[order[i]];
    centroid /= n;
    const int worst = order[n];

    auto try_point = [&](double coeff) {
      RVector cand = centroid + coeff * (simplex[worst] - centroid);
      return std::make_pair(cand, f(cand));
    };

    auto [refl, f_refl] = try_point(-1.0);
    if (f_refl < values[order[0]]) {
      auto [exp_pt, f_exp] = try_point(-2.0);
      if (f_exp < f_refl) {
        simplex[worst] = exp_pt;
        values[worst] = f_exp;
      } else {
        simplex[worst] = refl;
        values[worst] = f_refl;
      }
    } else if (f_refl < values[order[n - 1]]) {
      simplex[worst] = refl;
      values[worst] = f_refl;
    } else {
      auto [contr, f_contr] = try_point(0.5);
      if (f_contr < values[worst]) {
        simplex[worst] = contr;
        values[worst] = f_contr;
      } else {
        for (int i = 1; i <= n; ++i) {
          simplex[order[i]] =
              simplex[order[0]] + 0.5 * (simplex[order[i]] - simplex[order[0]]);
          values[order[i]] = f(simplex[order[i]]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (values[i] < values[best])
      best = i;
  return simplex[best];
}

double pure_coherence(const Povm &p, const PureState &psi) {
  return c_rel_povm(psi.projector(), p).value;
}

} // namespace

MaxCoherenceResult max_coherence_pure(const Povm &p, int grid_density,
                                      std::uint64_t seed) {
  const int d = p.dim();
  if (d == 2) {
    // Fibonacci sphere scan, then refine the best cell.
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    double best_val = -1.0;
    double best_theta = 0.0, best_phi = 0.0;
    for (int k = 0; k < grid_density; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / grid_density;
      const double theta = std::acos(std::clamp(z, -1.0, 1.0));
      const double phi = k * golden;
      const double val = pure_coherence(p, pure_from_angles(theta, phi));
      if (val > best_val) {
        best_val = val;
        best_theta = theta;
        best_phi = phi;
      }
    }
    auto objective = [&](const RVector &x) {
      return -pure_coherence(p, pure_from_angles(x(0), x(1)));
    };
    RVector x0(2);
    x0 << best_theta, best_phi;
    const double cell = 2.0 * std::sqrt(std::numbers::pi / grid_density);
    const RVector x = nelder_mead(objective, x0, cell, 400);
    MaxCoherenceResult result{pure_from_angles(x(0), x(1)), 0.0};
    result.value = pure_coherence(p, result.state);
    return result;
  }

  // Small d > 2: random restarts with Nelder-Mead over re/im amplitudes.
  Rng rng(seed);
  auto state_from = [&](const RVector &x) {
    CVector amp(d);
    for (int i = 0; i < d; ++i)
      amp(i) = Complex(x(2 * i), x(2 * i + 1));
    const double n = amp.norm();
    if (n < 1e-12)
      amp(0) = 1.0;
    return PureState(amp / amp.norm());
  };
  auto objective = [&](const RVector &x) {
    return -pure_coherence(p, state_from(x));
  };
  MaxCoherenceResult best{random_pure(d, rng), -1.0};
  for (int restart = 0; restart < 24; ++restart) {
    const PureState start = random_pure(d, rng);
    RVector x0(2 * d);
    for (int i = 0; i < d; ++i) {
      x0(2 * i) = start.amplitudes()(i).real();
      x0(2 * i + 1) = start.amplitudes()(i).imag();
    }
    const RVector x = nelder_mead(objective, x0, 0.25, 600);
    const PureState cand = state_from(x);
    const double val = pure_coherence(p, cand);
    if (val > best.value) {
      best.value = val;
      best.state = cand;
    }
  }
  return best;
}

} // namespace povmcoh
