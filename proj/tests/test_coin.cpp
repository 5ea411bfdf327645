#include <cmath>

#include "doctest.h"
#include "nuband/bandop.hpp"
#include "nuband/coin.hpp"
#include "nuband/svd.hpp"

using namespace nuband;

TEST_CASE("embedding of the drift family and the unitary coin") {
  const UnitaryEmbedding d = family_drift({pi / 6, pi / 3});
  CHECK(d.g == doctest::Approx(0.5).epsilon(1e-14));
  // middle row (q, g, s) = (0, sin xi, cos xi)
  CHECK(std::abs(d.q) < 1e-15);
  CHECK(std::abs(d.s - std::cos(pi / 6)) < 1e-15);
  const Mat m = d.as_matrix();
  CHECK((m.adjoint() * m - Mat::identity(3)).max_abs() < 1e-14);

  const UnitaryEmbedding id = embed(CoinContraction{1.0, 0.0, 0.0, 1.0});
  CHECK(id.g == 1.0);
  CHECK(std::abs(id.q) + std::abs(id.r) + std::abs(id.s) + std::abs(id.t) == 0.0);

  CHECK(family_drift({pi / 2, 0.3}).g == doctest::Approx(1.0));
  CHECK_THROWS_AS(family_drift({-0.1, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(family_g0({0.1, 2.0}), std::invalid_argument);
}

TEST_CASE("random embeddable coins embed to a unitary with matching determinant") {
  Rng rng(21);
  for (int t = 0; t < 1000; ++t) {
    const CoinContraction c = random_embeddable_coin(rng);
    const UnitaryEmbedding e = embed(c);
    const Mat m = e.as_matrix();
    CHECK((m.adjoint() * m - Mat::identity(3)).max_abs() < 1e-12);
    CHECK((m * m.adjoint() - Mat::identity(3)).max_abs() < 1e-12);
    const auto [g, chi] = det_g_chi(c);
    CHECK(std::abs(g - e.g) < 1e-12);
    if (g > 1e-6) CHECK(std::abs(wrap_angle(chi - e.chi)) < 1e-12);
  }
}

TEST_CASE("determinant data") {
  const CoinContraction diag{std::polar(1.0, 0.4), 0.0, 0.0, std::polar(1.0, 0.9)};
  const auto [g, chi] = det_g_chi(diag);
  CHECK(g == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(chi == doctest::Approx(1.3).epsilon(1e-14));
  CHECK(det_g_chi(family_g0({0.7, 0.3}).coin()).first < 1e-15);
  Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    const double xi = rng.uniform(0.0, pi / 2);
    CHECK(std::abs(det_g_chi(family_drift({xi, rng.uniform(0.0, pi / 2)}).coin()).first -
                   std::sin(xi)) < 1e-14);
  }
}

TEST_CASE("vanishing-determinant family identities") {
  const UnitaryEmbedding a = family_g0({0.2, pi / 2 - 0.2});
  CHECK(std::abs(std::abs(a.alpha) + std::abs(a.delta) - 1.0) < 1e-14);
  const UnitaryEmbedding b = family_g0({0.0, pi / 2});
  CHECK(std::abs(b.gamma - b.q * b.t) < 1e-14);  // doubly-shift unitary factor
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const UnitaryEmbedding e = family_g0({rng.uniform(0.0, pi / 2), rng.uniform(0.0, pi / 2)});
    CHECK(std::abs(e.alpha * e.delta - e.beta * e.gamma) < 1e-15);
    const Mat m = e.as_matrix();
    CHECK((m.adjoint() * m - Mat::identity(3)).max_abs() < 1e-14);
  }
}

TEST_CASE("gauge change of the bordering vectors leaves hopping magnitudes fixed") {
  Rng rng(24);
  for (int t = 0; t < 40; ++t) {
    UnitaryEmbedding e = embed(random_embeddable_coin(rng));
    if (e.g >= 1.0 - 1e-9) continue;
    const TridiagonalBlockData bd = tridiag_blocks(e);
    UnitaryEmbedding e2 = e;
    const cplx ph = std::polar(1.0, rng.uniform(0.0, two_pi));
    // v -> ph v rescales (q, s) by conj(ph) and (r, t) = u by ph.
    e2.q *= std::conj(ph);
    e2.s *= std::conj(ph);
    e2.r *= ph;
    e2.t *= ph;
    const Mat m2 = e2.as_matrix();
    REQUIRE((m2.adjoint() * m2 - Mat::identity(3)).max_abs() < 1e-12);
    const TridiagonalBlockData bd2 = tridiag_blocks(e2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(std::abs(std::abs(bd.w_plus[i][j]) - std::abs(bd2.w_plus[i][j])) < 1e-13);
        CHECK(std::abs(std::abs(bd.w_minus[i][j]) - std::abs(bd2.w_minus[i][j])) < 1e-13);
      }
  }
}

TEST_CASE("unitarity test for contractions agrees with the determinant criterion") {
  Rng rng(25);
  CHECK(contraction_is_unitary(random_unitary(rng, 3), 1e-12));
  const UnitaryEmbedding half = embed(random_coin_with_g(rng, 0.5));
  CHECK_FALSE(contraction_is_unitary(half.coin().as_matrix(), 1e-12));
  for (int n = 2; n <= 6; ++n) {
    for (int t = 0; t < 10; ++t) {
      // Strict contraction: scale a unitary below 1.
      Mat w = random_unitary(rng, n) * cplx(rng.uniform(0.2, 0.95));
      const bool unit = contraction_is_unitary(w, 1e-12);
      DenseLU lu(w);
      const bool det_unimodular = std::abs(std::abs(lu.det()) - 1.0) <= 1e-10;
      CHECK(unit == det_unimodular);
      CHECK_FALSE(unit);
    }
  }
  Mat big = Mat::identity(2) * cplx(1.5);
  CHECK_THROWS_AS(contraction_is_unitary(big, 1e-12), std::invalid_argument);
}

TEST_CASE("embed rejections") {
  CHECK_THROWS_AS(embed(CoinContraction{1.4, 0.0, 0.0, 0.2}), std::invalid_argument);
  // A strict contraction has no 3x3 unitary border; the unitarity check fires.
  CHECK_THROWS_AS(embed(CoinContraction{0.5, 0.0, 0.0, 0.5}), NumericError);
}

TEST_CASE("coin JSON specifications") {
  const nlohmann::json fam{{"family", "drift"}, {"xi", 0.26}, {"eta", 1.05}};
  const UnitaryEmbedding e = coin_from_json(fam);
  CHECK(e.g == doctest::Approx(std::sin(0.26)).epsilon(1e-14));
  const nlohmann::json explicit_coin{{"alpha", {0.5, 0.0}},
                                     {"beta", {0.0, 0.0}},
                                     {"gamma", {0.0, 0.0}},
                                     {"delta", {1.0, 0.0}}};
  // rows (0.5, 0), (0, 1): singular values {1, 0.5}: embeddable.
  CHECK(coin_from_json(explicit_coin).g == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(coin_from_json(nlohmann::json{{"family", "nope"}}), ConfigError);
  CHECK_THROWS_AS(coin_from_json(nlohmann::json{{"family", "drift"}, {"zeta", 1.0}}), ConfigError);
  CHECK_THROWS_AS(coin_from_json(nlohmann::json{{"alpha", {1.0, 0.0}}}), nlohmann::json::exception);
}
