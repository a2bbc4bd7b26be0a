#include "povmcoh/trine.hpp"

#include <numbers>
#include <thread>

namespace povmcoh {

namespace {

Complex omega_power(double t) {
  return std::exp(Complex(0, 2.0 * std::numbers::pi * t / 3.0));
}

} // namespace

std::vector<CMatrix> trine_incoherent_unitaries() {
  std::vector<CMatrix> us;
  CMatrix u(2, 2);

  u << 1, 0, 0, 1; // (123)
  us.push_back(u);
  u << omega_power(-0.5), 0, 0, omega_power(0.5); // (231) = R_z(2pi/3)
  us.push_back(u);
  u << omega_power(-1), 0, 0, omega_power(1); // (312) = R_z(4pi/3)
  us.push_back(u);
  u << 0, Complex(0, -1), Complex(0, -1), 0; // (132) = R_m1(pi)
  us.push_back(u);
  u << 0, omega_power(1.25), omega_power(0.25), 0; // (321) = R_m2(pi)
  us.push_back(u);
  u << 0, omega_power(0.25), omega_power(1.25), 0; // (213) = R_m3(pi)
  us.push_back(u);
  return us;
}

double unitary_distance_up_to_phase(const CMatrix &u, const CMatrix &v) {
  const Complex overlap = (v.adjoint() * u).trace();
  if (std::abs(overlap) < 1e-12) {
    const double inner = 2.0 * (double(u.rows()) - std::abs(overlap));
    return std::sqrt(std::max(0.0, inner));
  }
  return (u - (overlap / std::abs(overlap)) * v).norm();
}

std::vector<CMatrix> derive_incoherent_unitaries(const NaimarkExtension &x) {
  if (x.d != 2 || x.d_prime != 3)
    throw ValidationError(
        "derive_incoherent_unitaries: minimal qubit trine extension required");
  // Range vectors of the rank-1 projectors.
  std::vector<CVector> phi;
  for (const auto &p : x.projectors) {
    HermEig eig = eig_hermitian(p);
    if (eig.eigenvalues(0) < 0.5)
      throw ValidationError("derive_incoherent_unitaries: projector not rank 1");
    phi.push_back(eig.eigenvectors.col(0));
  }

  const std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                                 {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  std::vector<CMatrix> result;
  for (const auto &perm : perms) {
    // U' = sum_i x_i |phi_{perm(i)}><phi_i| with (U')_{3,1} = (U')_{3,2} = 0.
    CMatrix cond(2, 3);
    for (int i = 0; i < 3; ++i) {
      cond(0, i) = phi[perm[i]](2) * std::conj(phi[i](0));
      cond(1, i) = phi[perm[i]](2) * std::conj(phi[i](1));
    }
    Eigen::JacobiSVD<CMatrix> svd(cond, Eigen::ComputeFullV);
    if (svd.singularValues()(1) < 1e-10)
      throw std::runtime_error(
          "derive_incoherent_unitaries: phase conditions are degenerate");
    CVector phases = svd.matrixV().col(2); // null direction
    const double mod_spread = std::abs(std::abs(phases(0)) - std::abs(phases(1))) +
                              std::abs(std::abs(phases(0)) - std::abs(phases(2)));
    if (mod_spread > 1e-8)
      throw std::runtime_error(
          "derive_incoherent_unitaries: phases do not have equal modulus");
    phases /= std::abs(phases(0));

    CMatrix u_prime = CMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
      u_prime += phases(i) * phi[perm[i]] * phi[i].adjoint();

    // Rescale to det(U') = 1, then put the extracted block into SU(2); the
    // remaining sign freedom is a global phase.
    const Complex det = u_prime.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-8)
      throw std::runtime_error(
          "derive_incoherent_unitaries: dilation is not unitary");
    u_prime *= std::pow(det, -1.0 / 3.0);
    CMatrix block = u_prime.topLeftCorner(2, 2);
    block /= std::sqrt(block.determinant());
    result.push_back(block);
  }
  return result;
}

namespace {

template <typename Fn>
std::vector<LandscapeSample> sample_grid(const GridSpec &grid, int threads,
                                         Fn &&value_at) {
  const int total = grid.n_theta * grid.n_phi;
  std::vector<LandscapeSample> samples(total);
  const int n_workers =
      threads > 0 ? threads
                  : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::exception_ptr> errors(n_workers);
  auto work = [&](int worker) {
    for (int idx = worker; idx < total; idx += n_workers) {
      const int it = idx / grid.n_phi;
      const int ip = idx % grid.n_phi;
      const double theta =
          grid.n_theta == 1 ? 0.0
                            : std::numbers::pi * it / (grid.n_theta - 1);
      const double phi =
          grid.n_phi == 1 ? 0.0
                          : 2.0 * std::numbers::pi * ip / (grid.n_phi - 1);
      LandscapeSample s;
      s.theta = theta;
      s.phi = phi;
      s.bloch = bloch_from_angles(theta, phi);
      s.value = value_at(theta, phi);
      samples[idx] = s;
    }
  };
  auto guarded = [&](int worker) {
    try {
      work(worker);
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (n_workers == 1) {
    guarded(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w)
      pool.emplace_back(guarded, w);
    for (auto &t : pool)
      t.join();
  }
  for (const auto &err : errors)
    if (err)
      std::rethrow_exception(err);
  return samples;
}

} // namespace

std::vector<LandscapeSample> coherence_landscape(const Povm &p,
                                                 const GridSpec &grid,
                                                 int threads) {
  return sample_grid(grid, threads, [&](double theta, double phi) {
    return c_rel_povm(pure_from_angles(theta, phi).projector(), p).value;
  });
}

std::vector<LandscapeSample> conversion_landscape(const DensityMatrix &rho,
                                                  const PicContext &ctx,
                                                  const GridSpec &grid,
                                                  int threads) {
  if (rho.dim() != 2)
    throw ValidationError("conversion_landscape: initial state must be a qubit");
  return sample_grid(grid, threads, [&](double theta, double phi) {
    const DensityMatrix sigma = pure_from_angles(theta, phi).projector();
    return fmax(rho, sigma, ctx).value;
  });
}

} // namespace povmcoh
