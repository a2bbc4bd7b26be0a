#include "povmcoh/random.hpp"

namespace povmcoh {

CMatrix random_ginibre(int rows, int cols, Rng &rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

CMatrix random_unitary(int dim, Rng &rng) {
  const CMatrix g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase convention so the distribution is Haar.
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

CMatrix random_hermitian(int dim, Rng &rng) {
  const CMatrix g = random_ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

PureState random_pure(int dim, Rng &rng) {
  CVector v = random_ginibre(dim, 1, rng).col(0);
  return PureState(v / v.norm());
}

DensityMatrix random_density(int dim, Rng &rng) {
  const CMatrix g = random_ginibre(dim, dim, rng);
  CMatrix w = g * g.adjoint();
  return DensityMatrix(w / w.trace().real());
}

std::vector<CMatrix> random_povm_effects(int dim, int n, Rng &rng) {
  std::vector<CMatrix> raw;
  CMatrix total = CMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    const CMatrix g = random_ginibre(dim, dim, rng);
    raw.push_back(g * g.adjoint());
    total += raw.back();
  }
  // Symmetric renormalization T^{-1/2} E T^{-1/2} restores completeness.
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(total);
  CMatrix inv_root = solver.operatorInverseSqrt();
  std::vector<CMatrix> effects;
  for (auto &e : raw) {
    CMatrix out = inv_root * e * inv_root;
    effects.push_back(0.5 * (out + out.adjoint()));
  }
  return effects;
}

std::vector<CMatrix> random_kraus_channel(int dim, int n_kraus, Rng &rng) {
  std::vector<CMatrix> raw;
  CMatrix total = CMatrix::Zero(dim, dim);
  for (int i = 0; i < n_kraus; ++i) {
    raw.push_back(random_ginibre(dim, dim, rng));
    total += raw.back().adjoint() * raw.back();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(total);
  CMatrix inv_root = solver.operatorInverseSqrt();
  std::vector<CMatrix> kraus;
  for (auto &k : raw)
    kraus.push_back(k * inv_root);
  return kraus;
}

RVector random_probability_vector(int n, Rng &rng) {
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  RVector p(n);
  for (int i = 0; i < n; ++i)
    p(i) = uni(rng);
  return p / p.sum();
}

} // namespace povmcoh
