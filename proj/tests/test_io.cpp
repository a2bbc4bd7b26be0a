#include "test_util.hpp"

#include "povmcoh/io.hpp"

using namespace povmcoh;
using namespace povmcoh::testing;

TEST_CASE("matrix JSON round trip") {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix m = random_ginibre(3, 3, rng);
    const CMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK(matrix_close(back, m, 0.0));
  }
  CHECK_THROWS_AS(matrix_from_json(Json::array()), ValidationError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2]]")), ValidationError);
}

TEST_CASE("povm, state, channel and extension round trips") {
  const Povm trine = trine_povm();
  const Povm back = povm_from_json(povm_to_json(trine));
  CHECK(back.dim() == 2);
  REQUIRE(back.outcomes() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(matrix_close(back.effect(i), trine.effect(i), 0.0));

  Rng rng(5);
  const DensityMatrix rho = random_density(2, rng);
  CHECK(matrix_close(state_from_json(state_to_json(rho)).matrix(), rho.matrix(),
                     0.0));

  const auto kraus = random_kraus_channel(2, 2, rng);
  const auto kraus_back = kraus_from_json(kraus_to_json(kraus));
  REQUIRE(kraus_back.size() == kraus.size());
  for (size_t i = 0; i < kraus.size(); ++i)
    CHECK(matrix_close(kraus_back[i], kraus[i], 0.0));

  const NaimarkExtension x = minimal_extension(trine);
  const NaimarkExtension x_back = extension_from_json(extension_to_json(x));
  CHECK(x_back.d == 2);
  CHECK(x_back.d_prime == 3);
  CHECK(x_back.kind == ExtensionKind::minimal);
  CHECK(x_back.embedding == "first-d-coordinates");
  REQUIRE(validate_extension(x_back, trine).ok);
}

TEST_CASE("landscape CSV header and shape") {
  std::vector<LandscapeSample> samples(2);
  samples[0].theta = 0.25;
  samples[0].value = 1.5;
  const std::string csv = landscape_to_csv(samples);
  CHECK(csv.rfind("theta,phi,bx,by,bz,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const Json arr = landscape_to_json(samples);
  REQUIRE(arr.is_array());
  CHECK(arr.size() == 2);
  CHECK(arr[0].contains("value"));
}

TEST_CASE("state JSON rejects inconsistent dims") {
  Json j;
  j["dim"] = 3;
  j["matrix"] = matrix_to_json(CMatrix::Identity(2, 2) / 2.0);
  CHECK_THROWS_AS(state_from_json(j), ValidationError);
}
