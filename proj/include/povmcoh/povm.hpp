#pragma once

#include "povmcoh/linalg.hpp"

#include <optional>
#include <vector>

namespace povmcoh {

// Positive-operator-valued measure: effects E_i >= 0 with sum_i E_i = 1.
class Povm {
public:
  Povm(int dim, std::vector<CMatrix> effects);

  int dim() const { return dim_; }
  int outcomes() const { return static_cast<int>(effects_.size()); }
  const std::vector<CMatrix> &effects() const { return effects_; }
  const CMatrix &effect(int i) const { return effects_.at(i); }

private:
  int dim_;
  std::vector<CMatrix> effects_;
};

// Measurement operators A_i with E_i = A_i^dag A_i.
struct MeasurementOperators {
  std::vector<CMatrix> ops;
  int dim() const { return ops.empty() ? 0 : static_cast<int>(ops[0].rows()); }
  int outcomes() const { return static_cast<int>(ops.size()); }
};

struct PovmDiagnostics {
  bool ok = false;
  double completeness_residual = 0.0;        // ||sum E_i - 1||_F
  std::vector<double> min_eigenvalues;       // per effect
  std::vector<double> hermiticity_residuals; // per effect
  std::string message;
};

/// Structural check of a candidate POVM; reports diagnostics, never throws.
PovmDiagnostics validate(const Povm &p, double tol = kHermTol);

/// Canonical measurement operators A_i = sqrt(E_i).
MeasurementOperators canonical_kraus(const Povm &p);

/// Outcome probabilities p_i = tr[E_i rho]; negative dust is clipped.
RVector outcome_probs(const Povm &p, const DensityMatrix &rho);

struct PostMeasurementBranch {
  double prob = 0.0;
  bool defined = false; // false when prob <= tol, state left empty
  std::optional<DensityMatrix> state;
};

/// Branches (p_i, A_i rho A_i^dag / p_i); outcomes with p_i below tol are
/// flagged undefined and carry no state.
std::vector<PostMeasurementBranch>
post_measurement_states(const MeasurementOperators &m, const DensityMatrix &rho,
                        double tol = 1e-12);

/// Number of eigenvalues of each effect above the rank tolerance.
std::vector<int> effect_ranks(const Povm &p, double tol = kHermTol);

/// The symmetric three-outcome qubit trine measurement with effects
/// (2/3)|phi_i><phi_i|, |phi_i> = (|0> + w^{i-1}|1>)/sqrt(2), w = exp(2 pi i/3).
Povm trine_povm();

/// Bloch directions m_i of the three trine measurement vectors.
std::vector<Eigen::Vector3d> trine_directions();

} // namespace povmcoh
