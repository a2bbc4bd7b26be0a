#include "povmcoh/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace povmcoh {

namespace {

const double kLog2 = std::log(2.0);

double xlog2x(double p) { return p <= 0.0 ? 0.0 : p * std::log(p) / kLog2; }

} // namespace

double hermiticity_residual(const CMatrix &m) {
  if (m.rows() != m.cols())
    return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

HermEig eig_hermitian(const CMatrix &h, double tol) {
  const double scale = std::max(1.0, h.norm());
  if (hermiticity_residual(h) > tol * scale)
    throw ValidationError("eig_hermitian: matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  const int n = static_cast<int>(h.rows());
  HermEig out;
  out.eigenvalues = RVector(n);
  out.eigenvectors = CMatrix(n, n);
  // Eigen returns ascending order; flip to descending.
  for (int i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

CMatrix sqrt_psd(const CMatrix &h, double tol) {
  HermEig eig = eig_hermitian(h, tol);
  const int n = static_cast<int>(h.rows());
  if (eig.eigenvalues.size() > 0 && eig.eigenvalues(n - 1) < -tol * std::max(1.0, h.norm()))
    throw ValidationError("sqrt_psd: matrix has a negative eigenvalue");
  // Eigenvalue noise at the zero end would otherwise blow up to sqrt(eps).
  const double clip =
      1e-12 * std::max(1.0, eig.eigenvalues.size() ? eig.eigenvalues(0) : 1.0);
  RVector roots(n);
  for (int i = 0; i < n; ++i)
    roots(i) = eig.eigenvalues(i) > clip ? std::sqrt(eig.eigenvalues(i)) : 0.0;
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

DensityMatrix::DensityMatrix(CMatrix m, double tol) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols())
    throw ValidationError("DensityMatrix: matrix must be square");
  if (hermiticity_residual(mat_) > tol * std::max(1.0, mat_.norm()))
    throw ValidationError("DensityMatrix: matrix is not Hermitian");
  if (std::abs(mat_.trace().real() - 1.0) > 1e3 * tol ||
      std::abs(mat_.trace().imag()) > tol)
    throw ValidationError("DensityMatrix: trace must equal 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (mat_ + mat_.adjoint()));
  if (solver.eigenvalues().minCoeff() < -tol)
    throw ValidationError("DensityMatrix: matrix has a negative eigenvalue");
  mat_ = 0.5 * (mat_ + mat_.adjoint());
}

PureState::PureState(CVector amplitudes, double tol) : amp_(std::move(amplitudes)) {
  if (std::abs(amp_.norm() - 1.0) > 1e3 * tol)
    throw ValidationError("PureState: amplitudes must have unit norm");
  amp_ /= amp_.norm();
}

DensityMatrix PureState::projector() const {
  return DensityMatrix(amp_ * amp_.adjoint());
}

double shannon_entropy(const RVector &p, double tol) {
  double sum = 0.0;
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    double pi = p(i);
    if (pi < -tol)
      throw ValidationError("shannon_entropy: negative probability");
    pi = std::max(0.0, pi);
    sum += pi;
    h -= xlog2x(pi);
  }
  if (std::abs(sum - 1.0) > 1e3 * tol)
    throw ValidationError("shannon_entropy: probabilities must sum to 1");
  return h;
}

double von_neumann_entropy(const DensityMatrix &rho) {
  HermEig eig = eig_hermitian(rho.matrix());
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    s -= xlog2x(std::max(0.0, eig.eigenvalues(i)));
  return s;
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
  if (rho.dim() != sigma.dim())
    throw ValidationError("fidelity: dimension mismatch");
  const CMatrix root = sqrt_psd(rho.matrix());
  const CMatrix inner = root * sigma.matrix() * root;
  HermEig eig = eig_hermitian(0.5 * (inner + inner.adjoint()));
  double f = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    f += std::sqrt(std::max(0.0, eig.eigenvalues(i)));
  return std::min(f, 1.0 + 1e-9);
}

CMatrix direct_sum_embed(const CMatrix &x, int d_prime) {
  if (x.rows() != x.cols())
    throw ValidationError("direct_sum_embed: operator must be square");
  if (d_prime < x.rows())
    throw ValidationError("direct_sum_embed: target dimension is smaller than source");
  CMatrix out = CMatrix::Zero(d_prime, d_prime);
  out.topLeftCorner(x.rows(), x.cols()) = x;
  return out;
}

DensityMatrix bloch_to_density(const BlochVector &b, double tol) {
  const double norm = b.r.norm();
  if (norm > 1.0 + tol)
    throw ValidationError("bloch_to_density: Bloch vector lies outside the unit ball");
  CMatrix m(2, 2);
  m = 0.5 * (CMatrix::Identity(2, 2) + b.r(0) * pauli_x() + b.r(1) * pauli_y() +
             b.r(2) * pauli_z());
  return DensityMatrix(m, std::max(kHermTol, tol));
}

BlochVector density_to_bloch(const DensityMatrix &rho) {
  if (rho.dim() != 2)
    throw ValidationError("density_to_bloch: state must be a qubit");
  BlochVector b;
  b.r(0) = (rho.matrix() * pauli_x()).trace().real();
  b.r(1) = (rho.matrix() * pauli_y()).trace().real();
  b.r(2) = (rho.matrix() * pauli_z()).trace().real();
  return b;
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix rotation_unitary(const Eigen::Vector3d &axis, double theta) {
  const Eigen::Vector3d n = axis.normalized();
  const CMatrix ns = n(0) * pauli_x() + n(1) * pauli_y() + n(2) * pauli_z();
  return std::cos(theta / 2) * CMatrix::Identity(2, 2) -
         Complex(0, 1) * std::sin(theta / 2) * ns;
}

PureState pure_from_angles(double theta, double phi) {
  CVector amp(2);
  amp(0) = std::cos(theta / 2);
  amp(1) = std::exp(Complex(0, phi)) * std::sin(theta / 2);
  return PureState(amp);
}

Eigen::Vector3d bloch_from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

} // namespace povmcoh
