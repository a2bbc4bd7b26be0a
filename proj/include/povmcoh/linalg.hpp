#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace povmcoh {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Thrown when an input violates a documented precondition (non-Hermitian
// operator, non-normalized state, dimension mismatch, ...).
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string &msg) : std::runtime_error(msg) {}
};

constexpr double kHermTol = 1e-9;   // Hermiticity / PSD eigenvalue tolerance
constexpr double kTraceTol = 1e-9;  // trace-normalization tolerance

double hermiticity_residual(const CMatrix &m);

struct HermEig {
  RVector eigenvalues; // sorted descending
  CMatrix eigenvectors; // columns, same order
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
HermEig eig_hermitian(const CMatrix &h, double tol = kHermTol);

/// Principal square root of a PSD Hermitian matrix.
CMatrix sqrt_psd(const CMatrix &h, double tol = kHermTol);

// Density operator: Hermitian, PSD (within tolerance) and unit trace.
class DensityMatrix {
public:
  explicit DensityMatrix(CMatrix m, double tol = kHermTol);
  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMatrix &matrix() const { return mat_; }

private:
  CMatrix mat_;
};

class PureState {
public:
  explicit PureState(CVector amplitudes, double tol = kTraceTol);
  int dim() const { return static_cast<int>(amp_.size()); }
  const CVector &amplitudes() const { return amp_; }
  DensityMatrix projector() const;

private:
  CVector amp_;
};

struct BlochVector {
  Eigen::Vector3d r;
};

/// Shannon entropy in bits; entries in [-tol, 0) are clipped to zero.
double shannon_entropy(const RVector &p, double tol = 1e-7);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix &rho);

/// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1].
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Pads a d x d operator with zeros into the upper-left block of a
/// d' x d' operator (first-d-coordinates embedding).
CMatrix direct_sum_embed(const CMatrix &x, int d_prime);

DensityMatrix bloch_to_density(const BlochVector &r, double tol = 1e-9);
BlochVector density_to_bloch(const DensityMatrix &rho);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// SU(2) rotation exp(-i theta/2 axis.sigma) about a unit Bloch axis.
CMatrix rotation_unitary(const Eigen::Vector3d &axis, double theta);

PureState pure_from_angles(double theta, double phi);
Eigen::Vector3d bloch_from_angles(double theta, double phi);

} // namespace povmcoh
