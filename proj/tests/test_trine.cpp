#include "test_util.hpp"

#include "povmcoh/trine.hpp"

using namespace povmcoh;
using namespace povmcoh::testing;

TEST_CASE("the six trine unitaries match their listed forms") {
  const auto us = trine_incoherent_unitaries();
  REQUIRE(us.size() == 6);

  CHECK(matrix_close(us[0], CMatrix::Identity(2, 2), 0.0));
  CHECK(matrix_close(us[1],
                     rotation_unitary({0, 0, 1}, 2 * std::numbers::pi / 3),
                     1e-14));
  CHECK(matrix_close(us[2],
                     rotation_unitary({0, 0, 1}, 4 * std::numbers::pi / 3),
                     1e-14));
  const auto dirs = trine_directions();
  for (int i = 0; i < 3; ++i)
    CHECK(matrix_close(us[3 + i],
                       rotation_unitary(dirs[i], std::numbers::pi), 1e-14));

  for (const auto &u : us) {
    CHECK(matrix_close(u * u.adjoint(), CMatrix::Identity(2, 2), 1e-14));
    CHECK(std::abs(u.determinant() - Complex(1, 0)) < 1e-14);
  }
}

TEST_CASE("the free unitaries form the triangle symmetry group") {
  const auto us = trine_incoherent_unitaries();
  // closure up to global phase
  for (const auto &a : us)
    for (const auto &b : us) {
      const CMatrix prod = a * b;
      double closest = 1e9;
      for (const auto &c : us)
        closest = std::min(closest, unitary_distance_up_to_phase(prod, c));
      CHECK(closest < 1e-9);
    }

  // each unitary permutes the measurement directions
  const auto dirs = trine_directions();
  for (const auto &u : us) {
    for (const auto &dir : dirs) {
      const DensityMatrix state = bloch_to_density({dir});
      const DensityMatrix rotated(u * state.matrix() * u.adjoint());
      const Eigen::Vector3d image = density_to_bloch(rotated).r;
      double closest = 1e9;
      for (const auto &other : dirs)
        closest = std::min(closest, (image - other).norm());
      CHECK(closest < 1e-9);
    }
  }
}

TEST_CASE("derive_incoherent_unitaries recovers the full list") {
  const NaimarkExtension x = minimal_extension(trine_povm());
  const auto derived = derive_incoherent_unitaries(x);
  REQUIRE(derived.size() == 6);
  const auto expected = trine_incoherent_unitaries();

  // identity permutation comes first and yields the identity
  CHECK(unitary_distance_up_to_phase(derived[0], CMatrix::Identity(2, 2)) <
        1e-9);

  // set equality up to global phase
  for (const auto &d : derived) {
    CHECK(matrix_close(d * d.adjoint(), CMatrix::Identity(2, 2), 1e-9));
    double closest = 1e9;
    for (const auto &e : expected)
      closest = std::min(closest, unitary_distance_up_to_phase(d, e));
    CHECK(closest < 1e-9);
  }
  for (const auto &e : expected) {
    double closest = 1e9;
    for (const auto &d : derived)
      closest = std::min(closest, unitary_distance_up_to_phase(d, e));
    CHECK(closest < 1e-9);
  }
}

TEST_CASE("coherence landscape hits the published extremes") {
  const Povm trine = trine_povm();
  GridSpec grid;
  grid.n_phi = 13;
  grid.n_theta = 7;
  const auto samples = coherence_landscape(trine, grid, 2);
  REQUIRE(samples.size() == size_t(13 * 7));

  double max_val = 0.0;
  for (const auto &s : samples)
    max_val = std::max(max_val, s.value);
  // poles are on the grid, so the global maximum log2(3) is attained
  CHECK(max_val == doctest::Approx(kLog2Of3).epsilon(1e-9));
  CHECK(samples.front().value == doctest::Approx(kLog2Of3).epsilon(1e-9));

  // theta = pi/2, phi = pi is antipodal to the first measurement direction
  const auto antipodal =
      std::find_if(samples.begin(), samples.end(), [](const auto &s) {
        return std::abs(s.theta - std::numbers::pi / 2) < 1e-12 &&
               std::abs(s.phi - std::numbers::pi) < 1e-12;
      });
  REQUIRE(antipodal != samples.end());
  CHECK(antipodal->value == doctest::Approx(1.0).epsilon(1e-9));

  // theta = pi/2, phi = 0 is the first measurement direction itself
  const auto aligned =
      std::find_if(samples.begin(), samples.end(), [](const auto &s) {
        return std::abs(s.theta - std::numbers::pi / 2) < 1e-12 &&
               std::abs(s.phi) < 1e-12;
      });
  REQUIRE(aligned != samples.end());
  CHECK(aligned->value ==
        doctest::Approx(kLog2Of3 - 1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("coherence landscape is invariant under the free unitaries") {
  const Povm trine = trine_povm();
  Rng rng(3);
  const auto us = trine_incoherent_unitaries();
  for (int trial = 0; trial < 40; ++trial) {
    const PureState psi = random_pure(2, rng);
    const double base = c_rel_povm(psi.projector(), trine).value;
    for (const auto &u : us) {
      const DensityMatrix rotated(u * psi.projector().matrix() * u.adjoint());
      CHECK(std::abs(c_rel_povm(rotated, trine).value - base) < 1e-9);
    }
  }
}

TEST_CASE("free operations never increase trine coherence") {
  const Povm trine = trine_povm();
  const auto kraus = canonical_kraus(trine);
  const auto us = trine_incoherent_unitaries();
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    const double base = c_rel_povm(rho, trine).value;
    for (const auto &u : us) {
      const DensityMatrix rotated(u * rho.matrix() * u.adjoint());
      CHECK(c_rel_povm(rotated, trine).value <= base + 1e-9);
    }
    CMatrix measured = CMatrix::Zero(2, 2);
    for (const auto &a : kraus.ops)
      measured += a * rho.matrix() * a.adjoint();
    CHECK(c_rel_povm(DensityMatrix(measured), trine).value <= base + 1e-9);
  }
}

TEST_CASE("some unitary increases trine coherence") {
  // Free unitaries are the exception: a generic rotation lifts the
  // coherence of a minimum-coherence state.
  const Povm trine = trine_povm();
  const DensityMatrix anti = bloch_to_density({{-1, 0, 0}});
  const CMatrix u = rotation_unitary({0, 1, 0}, 0.9);
  const DensityMatrix rotated(u * anti.matrix() * u.adjoint());
  CHECK(c_rel_povm(rotated, trine).value >
        c_rel_povm(anti, trine).value + 0.05);
}

TEST_CASE("conversion landscape on a coarse grid" * doctest::timeout(600)) {
  const PicContext ctx(minimal_extension(trine_povm()));
  const PureState psi =
      ket({std::cos(std::numbers::pi / 8), std::sin(std::numbers::pi / 8)});

  GridSpec grid;
  grid.n_phi = 7;
  grid.n_theta = 5;
  const auto samples = conversion_landscape(psi.projector(), ctx, grid, 2);
  REQUIRE(samples.size() == size_t(35));
  for (const auto &s : samples) {
    CHECK(s.value >= -1e-9);
    CHECK(s.value <= 1.0 + 1e-6);
  }

  // From |0> the landscape is identically 1.
  GridSpec tiny;
  tiny.n_phi = 5;
  tiny.n_theta = 3;
  for (const auto &s : conversion_landscape(qubit_ket(0), ctx, tiny, 2))
    CHECK(s.value >= 1.0 - 1e-5);
}
