#include "test_util.hpp"

#include "povmcoh/coherence.hpp"
#include "povmcoh/pic.hpp"
#include "povmcoh/trine.hpp"

#include <future>

using namespace povmcoh;
using namespace povmcoh::testing;

namespace {

Povm computational_povm() {
  return Povm(2, {qubit_ket(0).matrix(), qubit_ket(1).matrix()});
}

const PicContext &trine_minimal_context() {
  static const PicContext ctx(minimal_extension(trine_povm()));
  return ctx;
}

PureState psi_pi8() {
  return ket({std::cos(std::numbers::pi / 8), std::sin(std::numbers::pi / 8)});
}

} // namespace

TEST_CASE("identity channel is POVM-incoherent for the trine") {
  const PicVerdict verdict = pic_feasibility(
      process_from_kraus({CMatrix::Identity(2, 2)}), trine_minimal_context());
  CHECK(verdict.feasible);
  CHECK(verdict.slack >= -1e-7);
  REQUIRE(verdict.choi.has_value());

  // The returned Choi matrix reconstructs a CPTP channel equal to the target.
  const ProcessMatrix reconstructed =
      process_from_choi(ChoiMatrix{3, verdict.choi->m});
  const EmbeddingSuperops emb =
      embedding_superops(trine_minimal_context().extension());
  const CMatrix restricted =
      emb.e_hat.adjoint() * reconstructed.m * emb.e_hat;
  CHECK(matrix_close(restricted, CMatrix::Identity(4, 4), 1e-6));
}

TEST_CASE("all six trine unitaries are POVM-incoherent") {
  const auto &ctx = trine_minimal_context();
  for (const auto &u : trine_incoherent_unitaries()) {
    const PicVerdict verdict = pic_feasibility(process_from_kraus({u}), ctx);
    CHECK(verdict.feasible);
    CHECK(verdict.slack >= -1e-7);
  }
}

TEST_CASE("the trine measurement map is POVM-incoherent") {
  const auto kraus = canonical_kraus(trine_povm());
  const PicVerdict verdict =
      pic_feasibility(process_from_kraus(kraus.ops), trine_minimal_context());
  CHECK(verdict.feasible);
}

TEST_CASE("rotations outside the triangle symmetry are not free") {
  const auto &ctx = trine_minimal_context();
  const CMatrix rz =
      rotation_unitary({0, 0, 1}, std::numbers::pi / 5.0);
  const PicVerdict verdict = pic_feasibility(process_from_kraus({rz}), ctx);
  CHECK_FALSE(verdict.feasible);
  CHECK(verdict.slack < -1e-4);

  Rng rng(3);
  const auto symmetries = trine_incoherent_unitaries();
  int tested = 0;
  while (tested < 6) {
    const CMatrix u = random_unitary(2, rng);
    double closest = 1e9;
    for (const auto &s : symmetries)
      closest = std::min(closest, unitary_distance_up_to_phase(u, s));
    if (closest < 0.05)
      continue;
    ++tested;
    const PicVerdict v = pic_feasibility(process_from_kraus({u}), ctx);
    CHECK_FALSE(v.feasible);
    CHECK(v.slack < -1e-4);
  }
}

TEST_CASE("non-CPTP targets are rejected") {
  ProcessMatrix bad{2, 0.5 * CMatrix::Identity(4, 4)};
  CHECK_THROWS_AS(pic_feasibility(bad, trine_minimal_context()),
                  ValidationError);
}

TEST_CASE("feasible Choi matrices reconstruct monotone channels") {
  const auto &ctx = trine_minimal_context();
  const Povm trine = trine_povm();
  const CMatrix u = trine_incoherent_unitaries()[1];
  const PicVerdict verdict = pic_feasibility(process_from_kraus({u}), ctx);
  REQUIRE(verdict.feasible);
  REQUIRE(verdict.choi.has_value());

  const CptpCheck cptp = is_cptp(process_from_choi(*verdict.choi), 1e-6);
  CHECK(cptp.min_choi_eigenvalue > -1e-6);
  CHECK(cptp.trace_preservation_residual < 1e-6);

  // The reconstructed system channel never increases trine coherence.
  const EmbeddingSuperops emb = embedding_superops(ctx.extension());
  ProcessMatrix system_channel{
      2, 3.0 * emb.e_hat.adjoint() * reshuffle(verdict.choi->m) * emb.e_hat};
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    CMatrix out = apply_process(system_channel, rho.matrix());
    out = 0.5 * (out + out.adjoint());
    out /= out.trace().real();
    const DensityMatrix mapped(out);
    CHECK(c_rel_povm(mapped, trine).value <=
          c_rel_povm(rho, trine).value + 1e-6);
  }
}

TEST_CASE("projective POVMs: SDP verdict equals the direct MIO test") {
  const Povm comp = computational_povm();
  const NaimarkExtension trivial = minimal_extension(comp);
  const PicContext ctx(trivial);
  const ProcessMatrix delta = dephasing_superop(trivial);

  Rng rng(7);
  std::vector<ProcessMatrix> battery;
  for (int i = 0; i < 6; ++i)
    battery.push_back(process_from_kraus(random_kraus_channel(2, 3, rng)));
  for (int i = 0; i < 6; ++i) {
    // dephase-then-process maps are MIO by construction
    const ProcessMatrix gamma =
        process_from_kraus(random_kraus_channel(2, 3, rng));
    battery.push_back(ProcessMatrix{2, delta.m * gamma.m});
  }
  CMatrix phase(2, 2);
  phase << 1.0, 0.0, 0.0, std::exp(Complex(0, 0.7));
  battery.push_back(process_from_kraus({phase}));
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  battery.push_back(process_from_kraus({CMatrix(h / std::sqrt(2.0))}));

  for (const auto &lambda : battery) {
    const bool direct = is_block_incoherent(lambda, delta, 1e-7);
    const PicVerdict verdict = pic_feasibility(lambda, ctx);
    CHECK(verdict.feasible == direct);
  }
}

TEST_CASE("verdicts agree between minimal and canonical extensions" *
          doctest::timeout(1200)) {
  const Povm trine = trine_povm();
  const PicContext minimal_ctx(minimal_extension(trine));
  const PicContext canonical_ctx(canonical_extension(canonical_kraus(trine)));

  std::vector<ProcessMatrix> battery;
  const auto unitaries = trine_incoherent_unitaries();
  battery.push_back(process_from_kraus({unitaries[1]}));
  battery.push_back(process_from_kraus({unitaries[4]}));
  battery.push_back(process_from_kraus(canonical_kraus(trine).ops));
  battery.push_back(
      process_from_kraus({rotation_unitary({0, 0, 1}, std::numbers::pi / 5)}));
  battery.push_back(
      process_from_kraus({rotation_unitary({0, 1, 0}, 0.4)}));
  Rng rng(11);
  for (int i = 0; i < 3; ++i)
    battery.push_back(process_from_kraus(random_kraus_channel(2, 2, rng)));
  // completely depolarizing and a mixture with the identity
  std::vector<CMatrix> dep;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CMatrix k = CMatrix::Zero(2, 2);
      k(i, j) = std::sqrt(0.5);
      dep.push_back(k);
    }
  battery.push_back(process_from_kraus(dep));
  ProcessMatrix mix{2, 0.5 * battery.back().m + 0.5 * CMatrix::Identity(4, 4)};
  battery.push_back(mix);

  std::vector<std::future<std::pair<bool, bool>>> jobs;
  for (const auto &lambda : battery)
    jobs.push_back(std::async(std::launch::async, [&lambda, &minimal_ctx,
                                                   &canonical_ctx]() {
      const bool small = pic_feasibility(lambda, minimal_ctx).feasible;
      const bool large = pic_feasibility(lambda, canonical_ctx).feasible;
      return std::make_pair(small, large);
    }));
  for (auto &job : jobs) {
    const auto [small, large] = job.get();
    CHECK(small == large);
  }
}

TEST_CASE("fmax from a maximally coherent state reaches every target") {
  const auto &ctx = trine_minimal_context();
  Rng rng(13);
  for (int trial = 0; trial < 8; ++trial) {
    const DensityMatrix sigma = random_density(2, rng);
    const FmaxResult result = fmax(qubit_ket(0), sigma, ctx);
    CHECK(result.value >= 1.0 - 1e-5);
    CHECK(result.value <= 1.0 + 1e-6);
  }
}

TEST_CASE("fmax on the orbit of psi under the free unitaries") {
  const auto &ctx = trine_minimal_context();
  const PureState psi = psi_pi8();
  const DensityMatrix rho = psi.projector();

  CHECK(fmax(rho, rho, ctx).value >= 1.0 - 1e-6);

  for (const auto &u : trine_incoherent_unitaries()) {
    const DensityMatrix target(u * rho.matrix() * u.adjoint());
    CHECK(fmax(rho, target, ctx).value >= 1.0 - 1e-5);
  }

  // Strictly below 1 toward the higher-coherence pole state.
  const double to_pole = fmax(rho, qubit_ket(0), ctx).value;
  CHECK(to_pole < 1.0 - 1e-3);
  CHECK(to_pole > 0.5);
}

TEST_CASE("dropping the incoherence constraints makes every target reachable") {
  // The single-outcome POVM {1} has a trivial extension whose dephasing is
  // the identity map, so the SDP ranges over all CPTP channels.
  const Povm all(2, {CMatrix::Identity(2, 2)});
  const PicContext ctx(minimal_extension(all));
  Rng rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    const DensityMatrix sigma = random_density(2, rng);
    CHECK(fmax(rho, sigma, ctx).value >= 1.0 - 1e-6);
  }
}

TEST_CASE("fmax agrees across extensions on a spot check" *
          doctest::timeout(1200)) {
  const Povm trine = trine_povm();
  const PicContext canonical_ctx(canonical_extension(canonical_kraus(trine)));
  const PureState psi = psi_pi8();
  const double via_minimal =
      fmax(psi.projector(), qubit_ket(0), trine_minimal_context()).value;
  const double via_canonical =
      fmax(psi.projector(), qubit_ket(0), canonical_ctx).value;
  CHECK(std::abs(via_minimal - via_canonical) < 1e-5);
}
