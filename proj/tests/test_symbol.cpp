#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "nuband/eig.hpp"
#include "nuband/symbol.hpp"

using namespace nuband;

TEST_CASE("two-by-two symbol and its eigenvalue pair") {
  Rng rng(41);
  // x = 0 reproduces the coin itself.
  const CoinContraction c0 = random_embeddable_coin(rng);
  CHECK((symbol_T(c0, 0.0) - c0.as_matrix()).max_abs() < 1e-15);
  double worst_det = 0.0, worst_pair = 0.0, worst_sum = 0.0;
  for (int t = 0; t < 200; ++t) {
    const CoinContraction c = random_embeddable_coin(rng);
    const cplx det = c.alpha * c.delta - c.beta * c.gamma;
    for (int k = 0; k < 50; ++k) {
      const double x = rng.uniform(0.0, two_pi);
      const Mat m = symbol_T(c, x);
      worst_det = std::max(worst_det, std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) - det));
      const auto [l1, l2] = lambda_pm(c, x);
      worst_pair = std::max(worst_pair, std::abs(l1 * l2 - det));
      worst_sum = std::max(worst_sum, std::abs(l1 + l2 - (m(0, 0) + m(1, 1))));
      // Dense route agrees with the closed-form pair.
      const auto [e1, e2] = eig2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
      const double match = std::min(std::abs(e1 - l1) + std::abs(e2 - l2),
                                    std::abs(e1 - l2) + std::abs(e2 - l1));
      CHECK(match < 1e-12);
      CHECK(std::abs(l1) < 1.0 + 1e-12);
      CHECK(std::abs(l2) < 1.0 + 1e-12);
    }
  }
  CHECK(worst_det < 1e-12);
  CHECK(worst_pair < 1e-12);
  CHECK(worst_sum < 1e-12);
}

TEST_CASE("symbol eigenvalues in closed-form special cases") {
  // Identity coin: the two exponential branches.
  const CoinContraction id{1.0, 0.0, 0.0, 1.0};
  for (const double x : {0.3, 1.1, 4.0}) {
    const auto [l1, l2] = lambda_pm(id, x);
    const cplx a = std::polar(1.0, 2.0 * x), b = std::polar(1.0, -2.0 * x);
    CHECK(std::min(std::abs(l1 - a) + std::abs(l2 - b), std::abs(l1 - b) + std::abs(l2 - a)) <
          1e-14);
  }
  // Vanishing determinant with one zero entry: one branch collapses to zero.
  const UnitaryEmbedding z = family_g0({0.0, 0.8});
  for (const double x : {0.2, 2.5}) {
    const auto [l1, l2] = lambda_pm(z, x);
    const cplx big = std::abs(l1) > std::abs(l2) ? l1 : l2;
    CHECK(std::min(std::abs(l1), std::abs(l2)) < 1e-15);
    CHECK(std::abs(big - std::sin(0.8) * std::polar(1.0, 2.0 * x)) < 1e-14);
  }
}

TEST_CASE("translation-invariant spectrum") {
  const UnitaryEmbedding id = embed(CoinContraction{1.0, 0.0, 0.0, 1.0});
  const SymbolSpectrum s = ti_spectrum(id, uniform_grid(128));
  CHECK(s.min_mod == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(s.max_mod == doctest::Approx(1.0).epsilon(1e-13));
  const UnitaryEmbedding d = family_drift({0.4, 1.1});
  const SymbolSpectrum sd = ti_spectrum(d, uniform_grid(512));
  CHECK(sd.min_mod >= d.g - 1e-12);
  CHECK(sd.max_mod <= 1.0 + 1e-12);
  CHECK_THROWS_AS(ti_spectrum(d, {}), std::invalid_argument);
}

TEST_CASE("unit-cell symbols against the dense section oracle") {
  Rng rng(42);
  const UnitaryEmbedding e = embed(random_coin_with_g(rng, 0.35));
  PeriodicWord w{{0.3, -0.4, 0.9, 0.1}};
  // Dense periodic section with the repeating word: 4 copies of the cell.
  std::vector<double> phases;
  for (int i = 0; i < 16; ++i) phases.push_back(w.phases[static_cast<size_t>(i % 4)]);
  const BandMatrix T = build_T(e, PhaseField::explicit_values(phases, 0, true), 8,
                               Boundary::Periodic);
  const auto dense = eigvals(T.m);
  std::vector<cplx> bloch;
  for (int k = 0; k < 4; ++k) {
    const auto ev = eigvals(bloch_symbol(e, w, two_pi * k / 4));
    bloch.insert(bloch.end(), ev.begin(), ev.end());
  }
  REQUIRE(bloch.size() == dense.size());
  for (const cplx l : dense) {
    double best = 1e9;
    for (const cplx b : bloch) best = std::min(best, std::abs(l - b));
    CHECK(best < 1e-12);
    CHECK(std::abs(l) >= e.g - 1e-10);
    CHECK(std::abs(l) <= 1.0 + 1e-10);
  }
  CHECK_THROWS_AS(bloch_symbol(e, PeriodicWord{{0.1, 0.2, 0.3}}, 0.0), std::invalid_argument);
}

TEST_CASE("period-one word reduces to the translation-invariant symbol") {
  const UnitaryEmbedding e = family_drift({0.26, 1.05});
  const PeriodicWord w{{0.0, 0.0}};
  for (int k = 0; k < 64; ++k) {
    const double x = two_pi * k / 64;
    const Mat m = bloch_symbol(e, w, x);
    const auto [b1, b2] = eig2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    const auto [t1, t2] = lambda_pm(e, x / 2);
    CHECK(std::min(std::abs(b1 - t1) + std::abs(b2 - t2),
                   std::abs(b1 - t2) + std::abs(b2 - t1)) < 1e-12);
  }
}

TEST_CASE("word doubling nests the sampled spectra") {
  Rng rng(43);
  const UnitaryEmbedding e = embed(random_coin_with_g(rng, 0.5));
  for (int rep = 0; rep < 5; ++rep) {
    PeriodicWord w{{rng.uniform(0.0, two_pi), rng.uniform(0.0, two_pi)}};
    PeriodicWord ww{{w.phases[0], w.phases[1], w.phases[0], w.phases[1]}};
    for (int k = 0; k < 32; ++k) {
      const double x = two_pi * k / 32;
      const Mat m2 = bloch_symbol(e, w, x);
      const auto small = eig2(m2(0, 0), m2(0, 1), m2(1, 0), m2(1, 1));
      const auto big = eigvals(bloch_symbol(e, ww, 2.0 * x));
      for (const cplx l : {small.first, small.second}) {
        double best = 1e9;
        for (const cplx b : big) best = std::min(best, std::abs(l - b));
        CHECK(best < 1e-9);
      }
    }
  }
}

TEST_CASE("doubled-operator symbol squares the section symbol") {
  Rng rng(44);
  const UnitaryEmbedding e = embed(random_coin_with_g(rng, 0.3));
  PeriodicWord w{{0.5, -0.2, 0.8, 0.05, -0.6, 0.33, 0.9, -0.41}};
  for (int k = 0; k < 16; ++k) {
    const double x = two_pi * k / 16;
    const auto sq = eigvals(ttilde_bloch_symbol(e, w, x));
    const auto base = eigvals(bloch_symbol(e, w, x));
    for (const cplx l : sq) {
      if (std::abs(l) < 1e-8) continue;
      double best = 1e9;
      for (const cplx m : base) best = std::min(best, std::abs(l - m * m));
      CHECK(best < 1e-10);
    }
  }
}

TEST_CASE("hull of a point-mass distribution is the translation-invariant spectrum") {
  const UnitaryEmbedding e = family_drift({0.3, 0.9});
  const HullEstimate h = ergodic_hull(e, PhaseField::point(0.0), 4, 5, 256, 3);
  const SymbolSpectrum ti = ti_spectrum(e, uniform_grid(1024));
  const auto tipts = ti.points();
  double worst = 0.0;
  for (const cplx p : h.points) {
    double best = 1e9;
    for (const cplx q : tipts) best = std::min(best, std::abs(p - q));
    worst = std::max(worst, best);
  }
  CHECK(worst < 2e-2);  // grid-resolution closeness
  CHECK_FALSE(h.has_annulus);
}

TEST_CASE("hull of the full-torus distribution carries the analytic annulus") {
  const UnitaryEmbedding z = family_g0({0.4, 0.9});
  const HullEstimate h = ergodic_hull(z, PhaseField::torus(5), 4, 30, 256, 17);
  const double r_in = std::abs(std::abs(z.alpha) - std::abs(z.delta));
  const double r_out = std::abs(z.alpha) + std::abs(z.delta);
  REQUIRE(h.has_annulus);
  CHECK(h.includes_zero);
  CHECK(h.r_in == doctest::Approx(r_in).epsilon(1e-4));
  CHECK(h.r_out == doctest::Approx(r_out).epsilon(1e-6));
  CHECK_FALSE(h.is_exact);
  for (const cplx p : h.points) {
    const double m = std::abs(p);
    if (m < 1e-9) continue;
    CHECK(m >= r_in - 1e-9);
    CHECK(m <= r_out + 1e-9);
  }
  // The half-half family: swept spectrum fills the whole unit disc.
  const UnitaryEmbedding fz = family_g0({pi / 4, pi / 4});
  const HullEstimate hfz = ergodic_hull(fz, PhaseField::torus(6), 2, 5, 512, 18);
  CHECK(hfz.r_out == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(hfz.r_in < 4e-3);  // grid-limited: the swept modulus reaches 0 between samples
}

TEST_CASE("scalar symbols of the diagonal compressions") {
  // Rotation family: a circle of radius cos(eta).
  const ScalarSymbol s = vjj_symbol(family_drift({0.26, 1.05}), 1);
  CHECK(s.semi_major == doctest::Approx(std::cos(1.05)).epsilon(1e-14));
  CHECK(s.semi_minor == doctest::Approx(std::cos(1.05)).epsilon(1e-14));
  // Vanishing determinant: ellipse with axes |alpha| +- |delta|.
  const UnitaryEmbedding z = family_g0({0.4, 0.9});
  const ScalarSymbol sz = vjj_symbol(z, 1);
  CHECK(sz.semi_major ==
        doctest::Approx(std::abs(z.alpha) + std::abs(z.delta)).epsilon(1e-14));
  CHECK(sz.semi_minor ==
        doctest::Approx(std::abs(std::abs(z.alpha) - std::abs(z.delta))).epsilon(1e-14));
  // Equal real coefficients: the ellipse collapses to a segment.
  const ScalarSymbol seg = vjj_symbol(family_g0({pi / 4, pi / 4}), 1);
  CHECK(seg.semi_major == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(seg.semi_minor < 1e-14);
  CHECK_THROWS_AS(vjj_symbol(z, 3), std::invalid_argument);
}

TEST_CASE("gap arcs of the unitary factor symbol") {
  const UnitaryEmbedding e = family_drift({0.26, 1.05});
  const ArcSet arcs = unitary_symbol_arcs(e.v_coin());
  const auto gaps = arcs.gaps();
  REQUIRE(gaps.size() == 2);
  for (const auto& gp : gaps) {
    CHECK(std::abs(gp.half_width - 1.05) < 2.0 * arcs.guard);
    CHECK(std::min(std::abs(wrap_angle(gp.rotation)), std::abs(wrap_angle(gp.rotation - pi))) <
          1e-6);
    // Conservative: the reported gap never exceeds the true one.
    CHECK(gp.half_width <= 1.05 + 1e-9);
  }
  // A diagonal unitary coin covers the full circle: no gaps.
  const UnitaryEmbedding full = embed(CoinContraction{1.0, 0.0, 0.0, 1.0});
  CHECK(unitary_symbol_arcs(full.coin()).gaps().empty());
}
