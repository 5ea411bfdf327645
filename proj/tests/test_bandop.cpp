#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "nuband/bandop.hpp"
#include "nuband/eig.hpp"
#include "nuband/io.hpp"
#include "nuband/svd.hpp"

using namespace nuband;

TEST_CASE("band structure of the contraction section") {
  const UnitaryEmbedding e = family_drift({0.3, 1.0});
  const PhaseField ph = PhaseField::uniform(0.2, 5);
  const BandMatrix t = build_T(e, ph, 6, Boundary::Periodic);
  // Column 2j carries exactly two entries, at rows 2j-1 and 2j+2 (mod dim).
  for (int j = 0; j < 6; ++j) {
    int nonzeros = 0;
    for (int i = 0; i < 12; ++i)
      if (t.m(i, 2 * j) != cplx(0.0)) ++nonzeros;
    CHECK(nonzeros == 2);
    CHECK(t.m(((2 * j - 1) % 12 + 12) % 12, 2 * j) != cplx(0.0));
    CHECK(t.m((2 * j + 2) % 12, 2 * j) != cplx(0.0));
  }
  // Phase factorization: T equals the diagonal phase matrix times the
  // zero-phase section.
  const BandMatrix t0 = build_T(e, PhaseField::point(0.0), 6, Boundary::Periodic);
  CHECK((t.m - phase_diagonal(ph, 12) * t0.m).max_abs() == 0.0);

  CHECK_THROWS_AS(build_T(e, ph, 1, Boundary::Open), std::invalid_argument);
  // Explicit phase window too small for the requested section.
  const PhaseField small = PhaseField::explicit_values({0.1, 0.2, 0.3}, 0);
  CHECK_THROWS_AS(build_T(e, small, 4, Boundary::Open), std::invalid_argument);
}

TEST_CASE("identity coin gives a two-shift unitary of norm one") {
  const UnitaryEmbedding id = embed(CoinContraction{1.0, 0.0, 0.0, 1.0});
  const BandMatrix t = build_T(id, PhaseField::point(0.0), 8, Boundary::Periodic);
  CHECK((t.m.adjoint() * t.m - Mat::identity(16)).max_abs() < 1e-15);
  CHECK(operator_norm(t.m) == doctest::Approx(1.0).epsilon(1e-12));
  // Exactly one entry of modulus one per column.
  for (int j = 0; j < 16; ++j) {
    int cnt = 0;
    for (int i = 0; i < 16; ++i)
      if (std::abs(t.m(i, j)) > 0.5) ++cnt;
    CHECK(cnt == 1);
  }
}

TEST_CASE("polar factorization is exact on sections") {
  Rng rng(31);
  double worst_polar = 0.0, worst_unit = 0.0, worst_proj = 0.0;
  for (int t = 0; t < 25; ++t) {
    UnitaryEmbedding e = embed(random_embeddable_coin(rng));
    if (e.g >= 1.0 - 1e-9) continue;
    const int M = 8 + 8 * (t % 4);
    const PhaseField ph = PhaseField::torus(100 + t);
    const BandMatrix T = build_T(e, ph, M, Boundary::Periodic);
    const PolarParts p = build_polar(e, ph, M, Boundary::Periodic);
    worst_polar = std::max(worst_polar, (T.m - p.V.m * p.K.m).max_abs());
    worst_unit = std::max(worst_unit, (p.V.m.adjoint() * p.V.m - Mat::identity(2 * M)).max_abs());
    worst_proj = std::max({worst_proj, (p.P1 + p.P2 - Mat::identity(2 * M)).max_abs(),
                           (p.P1 * p.P2).max_abs(), (p.K.m * p.P1 - p.P1).max_abs(),
                           (p.K.m * p.P2 - p.P2 * e.g).max_abs()});
    // K spectrum {1, g}, each with multiplicity M.
    int n1 = 0, ng = 0;
    for (const cplx l : eigvals(p.K.m)) {
      (std::abs(l - cplx(1.0)) <= std::abs(l - cplx(e.g)) ? n1 : ng) += 1;
      CHECK(std::min(std::abs(l - cplx(1.0)), std::abs(l - cplx(e.g))) < 1e-10);
    }
    CHECK(n1 == M);
    CHECK(ng == M);
  }
  CHECK(worst_polar < 1e-12);
  CHECK(worst_unit < 1e-12);
  CHECK(worst_proj < 1e-12);
}

TEST_CASE("unitary limit of the polar factorization") {
  const UnitaryEmbedding id = embed(CoinContraction{0.0, 1.0, 1.0, 0.0});
  REQUIRE(id.g == 1.0);
  const PhaseField ph = PhaseField::torus(9);
  const PolarParts p = build_polar(id, ph, 4, Boundary::Periodic);
  CHECK(p.g_is_one);
  CHECK((p.K.m - Mat::identity(8)).max_abs() == 0.0);
  CHECK((p.V.m - build_T(id, ph, 4, Boundary::Periodic).m).max_abs() == 0.0);
  CHECK_THROWS_AS(tridiag_blocks(id), std::invalid_argument);
}

TEST_CASE("hopping data of the block compressions") {
  // Worked family: the four block norms are cos/sin of the rotation angle.
  const UnitaryEmbedding e = family_drift({pi / 12, pi / 3});
  const TridiagonalBlockData bd = tridiag_blocks(e);
  CHECK(bd.norm[0][0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bd.norm[1][1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bd.norm[1][0] == doctest::Approx(std::sin(pi / 3)).epsilon(1e-14));
  CHECK(bd.norm[0][1] == doctest::Approx(std::sin(pi / 3)).epsilon(1e-14));
  CHECK(bd.gap_ok);
  // Annulus inner radius: frozen reference value evaluated from the
  // closed-form specialization to this family.
  CHECK(bd.rV == doctest::Approx(0.79266774).epsilon(1e-7));
  CHECK(bd.rV >= std::max(bd.norm[0][0], e.g * bd.norm[1][1]));

  // Determinant-phase expression of the first block norm.
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    UnitaryEmbedding r = embed(random_embeddable_coin(rng));
    if (r.g >= 1.0 - 1e-9) continue;
    const TridiagonalBlockData b = tridiag_blocks(r);
    const cplx gec = std::polar(r.g, r.chi);
    const double nice = (std::abs(r.delta - std::conj(r.alpha) * gec) +
                         std::abs(r.alpha - std::conj(r.delta) * gec)) /
                        (1.0 - r.g * r.g);
    CHECK(std::abs(nice - b.norm[0][0]) < 1e-12);
  }
}

TEST_CASE("norm of tridiagonal compressions equals |w+| + |w-|") {
  // Pure one-sided shifts (drift family): the truncation norm is exact and
  // independent of the phase realization.
  const UnitaryEmbedding e = family_drift({pi / 12, pi / 3});
  const TridiagonalBlockData bd = tridiag_blocks(e);
  for (int rep = 0; rep < 3; ++rep) {
    const Mat w = compression_vjk(e, PhaseField::torus(40 + rep), 64, 0, 0);
    CHECK(std::abs(operator_norm(w) - bd.norm[0][0]) < 1e-10);
  }
  // Generic coin: the ring section picks up an O(1/M^2) Bloch-grid defect.
  Rng rng(33);
  const UnitaryEmbedding g = embed(random_coin_with_g(rng, 0.45));
  const TridiagonalBlockData bg = tridiag_blocks(g);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Mat w = compression_vjk(g, PhaseField::torus(50), 256, i, j);
      CHECK(std::abs(operator_norm(w) - bg.norm[i][j]) < 2e-3);
    }
}

TEST_CASE("off-diagonal compressions vanish exactly for the special patterns") {
  // Vanishing coin off-diagonal: block-diagonal unitary factor.
  const UnitaryEmbedding diag = embed(CoinContraction{std::polar(1.0, 0.2), 0.0, 0.0, 0.6});
  const TridiagonalBlockData bdd = tridiag_blocks(diag);
  CHECK(bdd.norm[0][1] < 1e-14);
  CHECK(bdd.norm[1][0] < 1e-14);
  CHECK(std::abs(bdd.norm[0][0] - 1.0) < 1e-13);  // unitary diagonal blocks
  // Vanishing coin diagonal: block-off-diagonal unitary factor.
  const UnitaryEmbedding off = embed(CoinContraction{0.0, 0.45, 1.0, 0.0});
  const TridiagonalBlockData bdo = tridiag_blocks(off);
  CHECK(bdo.norm[0][0] < 1e-14);
  CHECK(bdo.norm[1][1] < 1e-14);
  // Generic coins keep every block alive.
  Rng rng(34);
  const TridiagonalBlockData bg = tridiag_blocks(embed(random_coin_with_g(rng, 0.5)));
  CHECK(bg.norm[0][1] > 1e-6);
  CHECK(bg.norm[1][0] > 1e-6);
}

TEST_CASE("doubled operator equals the compression of the square") {
  Rng rng(35);
  for (int t = 0; t < 6; ++t) {
    const UnitaryEmbedding e = embed(random_coin_with_g(rng, 0.15 + 0.1 * t));
    const PhaseField ph = PhaseField::torus(600 + t);
    const int M = 8;
    const BandMatrix tt = build_Ttilde(e, ph, M);
    CHECK((tt.m - ttilde_factorized(e, ph, M)).max_abs() < 1e-14);
    // Nonzero eigenvalues match the squares of the underlying section's.
    const auto base = eigvals(build_T(e, ph, M, Boundary::Periodic).m);
    for (const cplx l : eigvals(tt.m)) {
      double best = 1e9;
      for (const cplx m : base) best = std::min(best, std::abs(l - m * m));
      CHECK(best < 1e-11);
    }
  }
  CHECK_THROWS_AS(build_Ttilde(family_drift({0.3, 0.4}), PhaseField::point(0.0), 7),
                  std::invalid_argument);
}

TEST_CASE("doubled operator in the unitary and trivial limits") {
  const UnitaryEmbedding u = embed(CoinContraction{0.0, 1.0, 1.0, 0.0});
  const BandMatrix tt = build_Ttilde(u, PhaseField::torus(61), 8);
  CHECK((tt.m.adjoint() * tt.m - Mat::identity(8)).max_abs() < 1e-13);

  const UnitaryEmbedding id = embed(CoinContraction{1.0, 0.0, 0.0, 1.0});
  const BandMatrix sq = build_Ttilde(id, PhaseField::point(0.0), 8);
  // The square of a two-step shift: one unit entry per column, two cells over.
  for (int j = 0; j < 8; ++j) {
    int cnt = 0;
    for (int i = 0; i < 8; ++i)
      if (std::abs(sq.m(i, j)) > 0.5) ++cnt;
    CHECK(cnt == 1);
  }
}

TEST_CASE("structural classification") {
  Rng rng(36);
  const StructureFlags generic = classify_structure(embed(random_coin_with_g(rng, 0.4)));
  CHECK(generic.cnu);
  CHECK_FALSE(generic.v_diagonal);
  CHECK_FALSE(generic.v_offdiagonal);

  const StructureFlags two_circles =
      classify_structure(embed(CoinContraction{std::polar(1.0, 0.3), 0.0, 0.0, 0.55}));
  CHECK_FALSE(two_circles.cnu);
  CHECK(two_circles.beta_gamma_zero);
  CHECK(two_circles.v_diagonal);
  CHECK(two_circles.closed_form == "two_circles");
  CHECK(two_circles.closed_g == doctest::Approx(0.55).epsilon(1e-12));

  const StructureFlags pairs = classify_structure(embed(CoinContraction{0.0, 0.8, 1.0, 0.0}));
  CHECK(pairs.alpha_delta_zero);
  CHECK(pairs.v_offdiagonal);
  CHECK(pairs.closed_form == "pm_sqrt_g_pairs");
  CHECK(pairs.closed_g == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(pairs.closed_theta == doctest::Approx(std::arg(cplx(0.8))).epsilon(1e-12));
}

TEST_CASE("CSV export round trip of the sparse entries") {
  const UnitaryEmbedding e = family_drift({0.3, 0.9});
  const BandMatrix t = build_T(e, PhaseField::torus(71), 4, Boundary::Periodic);
  std::ostringstream os;
  t.write_csv(os);
  const std::string csv = os.str();
  // Parse back and compare entrywise.
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "row,col,re,im");
  Mat back(8, 8);
  while (std::getline(in, line)) {
    int r = 0, c = 0;
    double re = 0, im = 0;
    REQUIRE(std::sscanf(line.c_str(), "%d,%d,%lg,%lg", &r, &c, &re, &im) == 4);
    back(r, c) = cplx(re, im);
  }
  CHECK((back - t.m).max_abs() == 0.0);
  const nlohmann::json man = band_manifest(e, PhaseField::torus(71), 4, Boundary::Periodic, BandKind::T);
  CHECK(man.at("M") == 4);
  CHECK(man.at("bc") == "periodic");
  CHECK(man.at("phases").at("seed") == 71);
}
