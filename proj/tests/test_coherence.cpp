#include "test_util.hpp"

#include "povmcoh/coherence.hpp"

using namespace povmcoh;
using namespace povmcoh::testing;

namespace {

Povm computational_povm() {
  return Povm(2, {qubit_ket(0).matrix(), qubit_ket(1).matrix()});
}

Povm mixed_unitary_povm(const RVector &p) {
  std::vector<CMatrix> effects;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    effects.push_back(p(i) * CMatrix::Identity(2, 2));
  return Povm(2, std::move(effects));
}

DensityMatrix plus_state() { return bloch_to_density({{1, 0, 0}}); }

} // namespace

TEST_CASE("block_dephase basics") {
  const Povm trine = trine_povm();
  const NaimarkExtension x = minimal_extension(trine);
  Rng rng(3);
  const DensityMatrix rho = random_density(2, rng);
  const CMatrix lifted = embed_state(rho, x).matrix();
  const CMatrix dephased = block_dephase(lifted, x.projectors);

  // App-level fixed form: (1/3)[[1, r12, r21], [r21, 1, r12], [r12, r21, 1]].
  const Complex r12 = rho.matrix()(0, 1);
  const Complex r21 = rho.matrix()(1, 0);
  CMatrix expect(3, 3);
  expect << 1.0, r12, r21, r21, 1.0, r12, r12, r21, 1.0;
  expect /= 3.0;
  CHECK(matrix_close(dephased, expect, 1e-10));

  // Idempotence and fixed points.
  CHECK(matrix_close(block_dephase(dephased, x.projectors), dephased, 1e-10));

  // Rank-1 projective dephasing keeps the diagonal only.
  const Povm comp = computational_povm();
  const NaimarkExtension trivial = minimal_extension(comp);
  const CMatrix diag = block_dephase(rho.matrix(), trivial.projectors);
  CHECK(std::abs(diag(0, 1)) < 1e-15);
  CHECK(diag(0, 0) == rho.matrix()(0, 0));
}

TEST_CASE("c_rel_block examples") {
  const Povm comp = computational_povm();
  const NaimarkExtension trivial = minimal_extension(comp);

  CHECK(c_rel_block(qubit_ket(0), trivial) == doctest::Approx(0.0));
  CHECK(c_rel_block(plus_state(), trivial) == doctest::Approx(1.0));
  CHECK(c_rel_block(maximally_mixed(2), trivial) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("c_rel_povm reproduces the trine values") {
  const Povm trine = trine_povm();

  const CoherenceReport at_zero = c_rel_povm(qubit_ket(0), trine);
  CHECK(at_zero.value == doctest::Approx(kLog2Of3).epsilon(1e-10));
  const CoherenceReport at_one = c_rel_povm(qubit_ket(1), trine);
  CHECK(at_one.value == doctest::Approx(kLog2Of3).epsilon(1e-10));

  const CoherenceReport at_mixed = c_rel_povm(maximally_mixed(2), trine);
  CHECK(at_mixed.value == doctest::Approx(kLog2Of3 - 1.0).epsilon(1e-10));

  // Pure states antipodal to the measurement directions sit at C = 1.
  for (const auto &dir : trine_directions()) {
    const DensityMatrix anti = bloch_to_density({Eigen::Vector3d(-dir)});
    CHECK(c_rel_povm(anti, trine).value == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("coherence report is internally consistent") {
  Rng rng(7);
  const Povm trine = trine_povm();
  for (int trial = 0; trial < 30; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    const CoherenceReport rep = c_rel_povm(rho, trine);
    double recomputed = shannon_entropy(rep.probs) - rep.state_entropy;
    for (int i = 0; i < 3; ++i)
      recomputed += rep.probs(i) * rep.branch_entropies[i];
    CHECK(std::abs(rep.value - recomputed) < 1e-10);
    CHECK(rep.value >= -1e-9);
  }
}

TEST_CASE("mixed-unitary POVM gives constant coherence H(p)") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const RVector p = random_probability_vector(3, rng);
    const Povm povm = mixed_unitary_povm(p);
    const DensityMatrix rho = random_density(2, rng);
    CHECK(std::abs(c_rel_povm(rho, povm).value - shannon_entropy(p)) < 1e-9);
  }
}

TEST_CASE("c_rel_povm agrees with block coherence on both extensions") {
  const Povm trine = trine_povm();
  const NaimarkExtension minimal = minimal_extension(trine);
  const NaimarkExtension canonical = canonical_extension(canonical_kraus(trine));
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    const double via_formula = c_rel_povm(rho, trine).value;
    const double via_minimal = c_rel_block(embed_state(rho, minimal), minimal);
    const double via_canonical =
        c_rel_block(embed_state(rho, canonical), canonical);
    CHECK(std::abs(via_formula - via_minimal) < 1e-8);
    CHECK(std::abs(via_formula - via_canonical) < 1e-8);
  }
}

TEST_CASE("coherence is invariant under the choice of measurement operators") {
  const Povm trine = trine_povm();
  const MeasurementOperators root = canonical_kraus(trine);
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    MeasurementOperators rotated;
    for (const auto &a : root.ops)
      rotated.ops.push_back(random_unitary(2, rng) * a);
    const NaimarkExtension x = canonical_extension(rotated, trial + 1);
    REQUIRE(validate_extension(x, trine).ok);
    const DensityMatrix rho = random_density(2, rng);
    CHECK(std::abs(c_rel_block(embed_state(rho, x), x) -
                   c_rel_povm(rho, trine).value) < 1e-8);
  }
}

TEST_CASE("reduction to standard relative entropy of coherence") {
  const Povm comp = computational_povm();
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    CMatrix diag = CMatrix::Zero(2, 2);
    diag(0, 0) = rho.matrix()(0, 0);
    diag(1, 1) = rho.matrix()(1, 1);
    const double expected =
        von_neumann_entropy(DensityMatrix(diag)) - von_neumann_entropy(rho);
    CHECK(std::abs(c_rel_povm(rho, comp).value - expected) < 1e-10);
  }
}

TEST_CASE("coherence is convex and bounded") {
  Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const Povm p(2, random_povm_effects(2, 3, rng));
    const DensityMatrix a = random_density(2, rng);
    const DensityMatrix b = random_density(2, rng);
    const double ca = c_rel_povm(a, p).value;
    const double cb = c_rel_povm(b, p).value;
    CHECK(ca >= -1e-9);
    CHECK(ca <= std::log2(3.0) + 1e-9);
    for (double lam : {0.25, 0.5, 0.75}) {
      const DensityMatrix mix(lam * a.matrix() + (1 - lam) * b.matrix());
      CHECK(c_rel_povm(mix, p).value <= lam * ca + (1 - lam) * cb + 1e-9);
    }
  }
}

TEST_CASE("is_povm_incoherent") {
  const Povm comp = computational_povm();
  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = 0.3;
  diag(1, 1) = 0.7;
  CHECK(is_povm_incoherent(DensityMatrix(diag), comp).incoherent);
  CHECK_FALSE(is_povm_incoherent(plus_state(), comp).incoherent);

  // No qubit state is incoherent for the trine.
  const Povm trine = trine_povm();
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    CHECK_FALSE(is_povm_incoherent(rho, trine).incoherent);
  }

  // Agreement with near-zero coherence on projective POVMs.
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    const bool by_effects = is_povm_incoherent(rho, comp).incoherent;
    const bool by_value = c_rel_povm(rho, comp).value < 1e-8;
    CHECK(by_effects == by_value);
  }
}

TEST_CASE("finite-difference gradient sanity") {
  // Central differences at h = 1e-5 match the h = 1e-6 evaluation to a
  // relative 1e-4 at an interior probe point.
  const Povm trine = trine_povm();
  const Eigen::Vector3d probe(0.3, -0.2, 0.1);
  auto objective = [&](const Eigen::Vector3d &r) {
    return c_rel_povm(bloch_to_density({r}), trine).value;
  };
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    auto grad_at = [&](double h) {
      e.setZero();
      e(k) = h;
      return (objective(probe + e) - objective(probe - e)) / (2 * h);
    };
    const double coarse = grad_at(1e-5);
    const double fine = grad_at(1e-6);
    CHECK(std::abs(coarse - fine) <= 1e-4 * std::max(1.0, std::abs(fine)));
  }
}

TEST_CASE("min_coherence_qubit") {
  const Povm trine = trine_povm();
  const MinCoherenceResult trine_min = min_coherence_qubit(trine);
  CHECK(trine_min.converged);
  CHECK(trine_min.r.r.norm() < 1e-5);
  CHECK(trine_min.value == doctest::Approx(kLog2Of3 - 1.0).epsilon(1e-7));

  const MinCoherenceResult comp_min = min_coherence_qubit(computational_povm());
  CHECK(comp_min.value < 1e-8);

  RVector p(2);
  p << 0.4, 0.6;
  const MinCoherenceResult flat = min_coherence_qubit(mixed_unitary_povm(p));
  CHECK(flat.value == doctest::Approx(shannon_entropy(p)).epsilon(1e-9));
}

TEST_CASE("max_coherence_pure") {
  const Povm trine = trine_povm();
  const MaxCoherenceResult top = max_coherence_pure(trine);
  CHECK(top.value == doctest::Approx(kLog2Of3).epsilon(1e-8));
  // maximum attained on the poles
  const double z = std::abs(density_to_bloch(top.state.projector()).r(2));
  CHECK(z == doctest::Approx(1.0).epsilon(1e-4));

  const MaxCoherenceResult comp = max_coherence_pure(computational_povm());
  CHECK(comp.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(density_to_bloch(comp.state.projector()).r(2)) < 1e-3);

  RVector p(3);
  p << 0.2, 0.5, 0.3;
  const MaxCoherenceResult flat = max_coherence_pure(mixed_unitary_povm(p));
  CHECK(flat.value == doctest::Approx(shannon_entropy(p)).epsilon(1e-9));
  CHECK(flat.value <= std::log2(3.0) + 1e-9);
}
