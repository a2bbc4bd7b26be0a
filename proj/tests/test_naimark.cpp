#include "test_util.hpp"

#include "povmcoh/coherence.hpp"
#include "povmcoh/naimark.hpp"

using namespace povmcoh;
using namespace povmcoh::testing;

namespace {

Povm computational_povm() {
  return Povm(2, {qubit_ket(0).matrix(), qubit_ket(1).matrix()});
}

// Eq.-style statistics check on random states.
void check_statistics(const NaimarkExtension &x, const Povm &p, Rng &rng,
                      int trials = 100) {
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix rho = random_density(p.dim(), rng);
    const DensityMatrix embedded = embed_state(rho, x);
    const RVector probs = outcome_probs(p, rho);
    for (int i = 0; i < p.outcomes(); ++i) {
      const double lifted =
          (x.projectors[i] * embedded.matrix()).trace().real();
      CHECK(std::abs(lifted - probs(i)) < 1e-9);
    }
  }
}

} // namespace

TEST_CASE("canonical extension of a projective measurement") {
  const Povm comp = computational_povm();
  const NaimarkExtension x = canonical_extension(canonical_kraus(comp));
  CHECK(x.d_prime == 4);
  REQUIRE(validate_extension(x, comp).ok);
  for (int i = 0; i < 2; ++i)
    CHECK(matrix_close(x.projectors[i].topLeftCorner(2, 2), comp.effect(i),
                       1e-12));
}

TEST_CASE("canonical extension of the trine") {
  const Povm trine = trine_povm();
  const NaimarkExtension x = canonical_extension(canonical_kraus(trine));
  CHECK(x.d_prime == 6);
  const ExtensionDiagnostics diag = validate_extension(x, trine);
  REQUIRE(diag.ok);
  // Every canonical projector has rank d = 2.
  for (const auto &p : x.projectors) {
    HermEig eig = eig_hermitian(p);
    int rank = 0;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
      if (eig.eigenvalues(k) > 0.5)
        ++rank;
    CHECK(rank == 2);
  }
  Rng rng(5);
  check_statistics(x, trine, rng);
}

TEST_CASE("canonical extension of a trivial mixed-unitary POVM") {
  RVector p(3);
  p << 0.5, 0.3, 0.2;
  std::vector<CMatrix> effects;
  for (int i = 0; i < 3; ++i)
    effects.push_back(p(i) * CMatrix::Identity(2, 2));
  const Povm povm(2, effects);
  const NaimarkExtension x = canonical_extension(canonical_kraus(povm));
  CHECK(x.d_prime == 6);
  REQUIRE(validate_extension(x, povm).ok);
  for (int i = 0; i < 3; ++i) {
    CHECK(matrix_close(x.projectors[i].topLeftCorner(2, 2),
                       p(i) * CMatrix::Identity(2, 2), 1e-12));
    // outcome probabilities are state-independent
    Rng rng(71);
    const DensityMatrix rho = random_density(2, rng);
    CHECK((x.projectors[i] * embed_state(rho, x).matrix()).trace().real() ==
          doctest::Approx(p(i)).epsilon(1e-10));
  }
}

TEST_CASE("minimal extension of the trine reproduces the 3-dimensional form") {
  const Povm trine = trine_povm();
  const NaimarkExtension x = minimal_extension(trine);
  CHECK(x.d_prime == 3);
  REQUIRE(validate_extension(x, trine).ok);

  for (int i = 0; i < 3; ++i) {
    // rank-1 projectors whose upper-left block is the effect
    HermEig eig = eig_hermitian(x.projectors[i]);
    CHECK(eig.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(eig.eigenvalues(1)) < 1e-10);
    CHECK(matrix_close(x.projectors[i].topLeftCorner(2, 2), trine.effect(i),
                       1e-10));
  }
  Rng rng(9);
  check_statistics(x, trine, rng);
}

TEST_CASE("minimal extension of a projective POVM is trivial") {
  const Povm comp = computational_povm();
  const NaimarkExtension x = minimal_extension(comp);
  CHECK(x.d_prime == 2);
  REQUIRE(validate_extension(x, comp).ok);
  for (int i = 0; i < 2; ++i)
    CHECK(matrix_close(x.projectors[i], comp.effect(i), 1e-10));
}

TEST_CASE("minimal extension of a random full-rank two-outcome POVM") {
  Rng rng(41);
  const Povm p(2, random_povm_effects(2, 2, rng));
  REQUIRE(validate(p).ok);
  const NaimarkExtension x = minimal_extension(p);
  CHECK(x.d_prime == 4);
  REQUIRE(validate_extension(x, p).ok);
  check_statistics(x, p, rng, 50);
}

TEST_CASE("validate_extension catches broken extensions") {
  const Povm trine = trine_povm();
  NaimarkExtension x = minimal_extension(trine);

  NaimarkExtension swapped = x;
  std::swap(swapped.projectors[0], swapped.projectors[1]);
  const ExtensionDiagnostics diag = validate_extension(swapped, trine);
  CHECK_FALSE(diag.ok);
  CHECK(diag.block_residual > 0.1);

  NaimarkExtension broken = x;
  broken.projectors[0] *= 0.9;
  CHECK_FALSE(validate_extension(broken, trine).ok);
}

TEST_CASE("embed_state") {
  const Povm trine = trine_povm();
  const NaimarkExtension x = minimal_extension(trine);
  Rng rng(43);
  const DensityMatrix rho = random_density(2, rng);
  const DensityMatrix lifted = embed_state(rho, x);
  CHECK(lifted.dim() == 3);
  CHECK(matrix_close(lifted.matrix().topLeftCorner(2, 2), rho.matrix(), 1e-15));
  CHECK(std::abs(lifted.matrix()(2, 2)) == 0.0);
  CHECK(std::abs(lifted.matrix().trace().real() - 1.0) < 1e-12);

  // d' = d embedding is the identity.
  const Povm comp = computational_povm();
  const NaimarkExtension trivial = minimal_extension(comp);
  CHECK(matrix_close(embed_state(rho, trivial).matrix(), rho.matrix(), 0.0));
}

TEST_CASE("dephased spectra agree across extensions") {
  // Lemma-level invariant: the nonzero spectrum of Delta[rho + 0] does not
  // depend on which Naimark extension defines Delta.
  const Povm trine = trine_povm();
  const NaimarkExtension minimal = minimal_extension(trine);
  const NaimarkExtension canonical = canonical_extension(canonical_kraus(trine));
  Rng rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    const CMatrix small = block_dephase(
        embed_state(rho, minimal).matrix(), minimal.projectors);
    const CMatrix large = block_dephase(
        embed_state(rho, canonical).matrix(), canonical.projectors);
    RVector padded = RVector::Zero(6);
    padded.head(3) = eig_hermitian(small).eigenvalues;
    const RVector big = eig_hermitian(large).eigenvalues;
    CHECK((padded - big).cwiseAbs().maxCoeff() < 1e-8);
  }
}
