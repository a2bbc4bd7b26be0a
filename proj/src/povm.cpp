#include "povmcoh/povm.hpp"

#include "povmcoh/random.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace povmcoh {

Povm::Povm(int dim, std::vector<CMatrix> effects)
    : dim_(dim), effects_(std::move(effects)) {
  if (dim_ <= 0)
    throw ValidationError("Povm: dimension must be positive");
  if (effects_.empty())
    throw ValidationError("Povm: at least one effect required");
  for (const auto &e : effects_)
    if (e.rows() != dim_ || e.cols() != dim_)
      throw ValidationError("Povm: effect dimension mismatch");
}

PovmDiagnostics validate(const Povm &p, double tol) {
  PovmDiagnostics diag;
  CMatrix sum = CMatrix::Zero(p.dim(), p.dim());
  bool ok = true;
  std::ostringstream msg;
  for (int i = 0; i < p.outcomes(); ++i) {
    const CMatrix &e = p.effect(i);
    const double herm = hermiticity_residual(e);
    diag.hermiticity_residuals.push_back(herm);
    if (herm > tol * std::max(1.0, e.norm())) {
      ok = false;
      msg << "effect " << i << " not Hermitian; ";
      diag.min_eigenvalues.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (e + e.adjoint()));
      const double lam_min = solver.eigenvalues().minCoeff();
      diag.min_eigenvalues.push_back(lam_min);
      if (lam_min < -tol) {
        ok = false;
        msg << "effect " << i << " not PSD (min eigenvalue " << lam_min << "); ";
      }
    }
    sum += e;
  }
  diag.completeness_residual = (sum - CMatrix::Identity(p.dim(), p.dim())).norm();
  if (diag.completeness_residual > tol * p.dim()) {
    ok = false;
    msg << "effects do not sum to identity (residual "
        << diag.completeness_residual << "); ";
  }
  diag.ok = ok;
  diag.message = ok ? "ok" : msg.str();
  return diag;
}

MeasurementOperators canonical_kraus(const Povm &p) {
  MeasurementOperators m;
  m.ops.reserve(p.outcomes());
  for (const auto &e : p.effects())
    m.ops.push_back(sqrt_psd(e));
  return m;
}

RVector outcome_probs(const Povm &p, const DensityMatrix &rho) {
  if (p.dim() != rho.dim())
    throw ValidationError("outcome_probs: dimension mismatch");
  RVector probs(p.outcomes());
  for (int i = 0; i < p.outcomes(); ++i) {
    double pi = (p.effect(i) * rho.matrix()).trace().real();
    if (pi < 0.0 && pi > -1e-10)
      pi = 0.0;
    probs(i) = pi;
  }
  return probs;
}

std::vector<PostMeasurementBranch>
post_measurement_states(const MeasurementOperators &m, const DensityMatrix &rho,
                        double tol) {
  if (m.dim() != rho.dim())
    throw ValidationError("post_measurement_states: dimension mismatch");
  std::vector<PostMeasurementBranch> branches;
  branches.reserve(m.outcomes());
  for (const auto &a : m.ops) {
    PostMeasurementBranch b;
    CMatrix raw = a * rho.matrix() * a.adjoint();
    b.prob = std::max(0.0, raw.trace().real());
    if (b.prob > tol) {
      b.defined = true;
      b.state.emplace(CMatrix(raw / raw.trace().real()));
    }
    branches.push_back(std::move(b));
  }
  return branches;
}

std::vector<int> effect_ranks(const Povm &p, double tol) {
  std::vector<int> ranks;
  for (const auto &e : p.effects()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (e + e.adjoint()));
    int r = 0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
      if (solver.eigenvalues()(k) > tol)
        ++r;
    ranks.push_back(r);
  }
  return ranks;
}

Povm trine_povm() {
  const Complex w = std::exp(Complex(0, 2.0 * std::numbers::pi / 3.0));
  std::vector<CMatrix> effects;
  for (int i = 0; i < 3; ++i) {
    const Complex wi = std::pow(w, static_cast<double>(i));
    CMatrix e(2, 2);
    e << 1.0, std::conj(wi), wi, 1.0;
    effects.push_back(e / 3.0);
  }
  return Povm(2, std::move(effects));
}

std::vector<Eigen::Vector3d> trine_directions() {
  std::vector<Eigen::Vector3d> dirs;
  for (int i = 0; i < 3; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / 3.0;
    dirs.emplace_back(std::cos(angle), std::sin(angle), 0.0);
  }
  return dirs;
}

} // namespace povmcoh
