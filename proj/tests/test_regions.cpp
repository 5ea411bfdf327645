#include <cmath>

#include "doctest.h"
#include "nuband/regions.hpp"
#include "nuband/symbol.hpp"

using namespace nuband;

TEST_CASE("membership basics of the gap-arc region") {
  const double theta = pi / 3, g = 0.4;
  CHECK(member_form(theta, g, cplx(0.5 * g, 0.0)));       // inside the small disc
  CHECK(member_form(theta, g, cplx(0.99, 0.0)));          // right of the gap line
  CHECK_FALSE(member_form(theta, g, cplx(0.0, 0.9)));     // far from every component
  CHECK_THROWS_AS(member_form(0.0, g, cplx(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(member_form(theta, 0.0, cplx(0.0)), std::invalid_argument);
  // Circle anchors sit on the boundary of the union: never margin-deep inside.
  Rng rng(51);
  for (int t = 0; t < 60; ++t) {
    const double th = rng.uniform(0.05, pi / 2 - 0.05);
    const double gg = rng.uniform(0.05, 0.95);
    const Region r = make_form_set(th, gg);
    CHECK_FALSE(r.contains_interior(std::polar(gg, th), 1e-6));
    CHECK_FALSE(r.contains_interior(std::polar(1.0, th), 1e-6));
    // Conjugation symmetry of the unrotated set.
    for (int s = 0; s < 40; ++s) {
      const cplx z(rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4));
      CHECK(member_form(th, gg, z) == member_form(th, gg, std::conj(z)));
      CHECK(member_delta(th, gg, z) == member_delta(th, gg, std::conj(z)));
    }
  }
}

TEST_CASE("cubic boundary anchors and parametrization") {
  Rng rng(52);
  for (int t = 0; t < 100; ++t) {
    const double theta = rng.uniform(0.05, pi / 2 - 0.05);
    const double g = rng.uniform(0.05, 0.95);
    const double c = std::cos(theta);
    CHECK(std::abs(cubic_boundary_y2(theta, g, c) - sq(std::sin(theta))) < 1e-12);
    CHECK(std::abs(cubic_boundary_y2(theta, g, g * c) - sq(g) * sq(std::sin(theta))) < 1e-12);
    CHECK(std::abs(cubic_boundary_y2(theta, g, 0.0)) < 1e-15);
    CHECK(std::abs(cubic_x_of_tau(theta, g, 1.0 / (2.0 * c))) < 1e-13);
    CHECK(std::abs(cubic_x_of_tau(theta, g, (1.0 + g) / (2.0 * c)) - g * c) < 1e-13);
    CHECK(std::abs(cubic_x_of_tau(theta, g, (1.0 + g) / (2.0 * g * c)) - c) < 1e-13);
  }
  CHECK_THROWS_AS(cubic_boundary_y2(0.4, 0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(cubic_boundary_y2(2.0, 0.5, 0.1), std::invalid_argument);
}

TEST_CASE("segment coverage happens exactly at the splitting threshold") {
  Rng rng(53);
  for (int t = 0; t < 60; ++t) {
    const double theta = rng.uniform(0.05, pi / 2 - 0.02);
    const double g = rng.uniform(0.02, 0.98);
    const bool threshold = sq(std::cos(theta)) < 4.0 * g / sq(1.0 + g);
    bool covered = true;
    for (int k = 1; k < 400 && covered; ++k) {
      const double s = 1e-9 + (1.0 - 2e-9) * k / 399.0;
      covered = member_form(theta, g, cplx(s, 0.0)) || s < g;
    }
    CHECK(covered == threshold);
  }
}

TEST_CASE("membership of the tangent-disc wedge and its inclusion") {
  CHECK(member_delta(0.8, 0.3, cplx(0.0)));
  CHECK(member_gamma(1.0, 0.3, 0.8, cplx(0.0)));
  // Triangle vertices are boundary points.
  const Region dl = make_delta_set(0.8, 0.3);
  CHECK_FALSE(dl.contains_interior(std::polar(0.3, 0.8), 1e-6));
  CHECK_FALSE(dl.contains_interior(cplx(0.3 / std::cos(0.8), 0.0), 1e-6));
  Rng rng(54);
  int viol = 0;
  for (int t = 0; t < 20000; ++t) {
    const double theta = rng.uniform(0.05, pi - 0.05);
    const double g = rng.uniform(0.02, 0.98);
    const cplx z(rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4));
    if (member_delta(theta, g, z) && !member_form(theta, g, z)) ++viol;
  }
  CHECK(viol == 0);
}

TEST_CASE("grid oracle for products of normal operators") {
  const double theta = pi / 3, g = 0.4;
  std::vector<cplx> arc;
  const int na = 2048;
  for (int i = 0; i <= na; ++i)
    arc.push_back(std::polar(1.0, theta + (two_pi - 2.0 * theta) * i / na));
  const double chord = sq((two_pi - 2.0 * theta) / na) / 8.0;
  std::vector<cplx> taus{cplx(0.0)};
  for (int k = 0; k < 4000; ++k) taus.push_back(1e-3 * std::pow(1e6, k / 4000.0));
  const std::vector<cplx> sb{cplx(1.0), cplx(g)};
  // The origin is certified through tau = 0.
  CHECK(member_product(arc, sb, cplx(0.0), taus, chord));
  // Points of the unitary spectrum are never certified.
  CHECK_FALSE(member_product(arc, sb, std::polar(1.0, theta + 0.5), taus, chord));
  const ProductOracle oracle(arc, sb, taus, chord);
  Rng rng(55);
  int mismatches = 0;
  for (int t = 0; t < 3000; ++t) {
    const cplx z(rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4));
    if (member_form(theta, g, z) != oracle.contains(z)) ++mismatches;
  }
  CHECK(mismatches <= 3);
  CHECK_THROWS_AS(member_product({}, sb, cplx(0.0), taus), std::invalid_argument);
}

TEST_CASE("rotation-dominated inclusion inside the unit disc") {
  Rng rng(56);
  int viol = 0;
  for (int t = 0; t < 30000; ++t) {
    const double theta = rng.uniform(0.05, pi / 2 * 0.9999);
    const double g = rng.uniform(0.02, 0.98);
    const double alpha = rng.uniform(0.0, theta * 0.9999);
    const cplx z = std::polar(std::sqrt(rng.uniform(0.0, 1.0)), rng.uniform(0.0, two_pi));
    if (member_form_rotated(theta, g, alpha, z) && !member_form(theta, g, z)) ++viol;
  }
  CHECK(viol == 0);
}

TEST_CASE("certificate for the drift family") {
  const UnitaryEmbedding e = family_drift({pi / 12, pi / 3});
  const TridiagonalBlockData bd = tridiag_blocks(e);
  const std::vector<GapArc> arcs{{pi / 3, 0.0}, {pi / 3, pi}};
  const Certificate cert = certified_resolvent(e, 0.1, bd, &arcs);
  REQUIRE(cert.regions.size() == 4);  // disc, annulus, two gap regions
  CHECK(cert.regions[0].kind == Region::Kind::Disc);
  CHECK(cert.regions[0].radius == doctest::Approx(std::sin(pi / 12)).epsilon(1e-14));
  CHECK(cert.regions[1].kind == Region::Kind::Annulus);
  CHECK(cert.regions[1].inner == doctest::Approx(0.79266774).epsilon(1e-7));
  CHECK(cert.regions[2].kind == Region::Kind::FormSet);
  CHECK(cert.regions[2].theta == doctest::Approx(pi / 3 - 0.1).epsilon(1e-14));
  CHECK(cert.gap_ok);
  const nlohmann::json j = cert.to_json();
  CHECK(j.contains("regions"));
  CHECK(j.at("regions").size() == 4);

  // Soundness: admissible periodic-word eigenvalues avoid every region.
  Rng rng(57);
  const std::vector<double> grid = uniform_grid(128);
  for (int w = 0; w < 60; ++w) {
    PeriodicWord word;
    word.phases.resize(static_cast<size_t>(2 + 2 * (w % 3)));
    for (auto& p : word.phases) p = rng.uniform(-0.1, 0.1);
    const SymbolSpectrum s = bloch_periodic(e, word, grid);
    for (const auto& per_x : s.eigs)
      for (const cplx lam : per_x)
        for (const Region& reg : cert.regions) CHECK_FALSE(reg.contains_interior(lam, 1e-9));
  }
}

TEST_CASE("certificate from detected arcs stays sound for a generic coin") {
  Rng rng(58);
  const UnitaryEmbedding e = embed(random_coin_with_g(rng, 0.3));
  const TridiagonalBlockData bd = tridiag_blocks(e);
  const Certificate cert = certified_resolvent(e, 0.05, bd);
  const std::vector<double> grid = uniform_grid(128);
  for (int w = 0; w < 40; ++w) {
    PeriodicWord word;
    word.phases.resize(static_cast<size_t>(2 + 2 * (w % 3)));
    for (auto& p : word.phases) p = rng.uniform(-0.05, 0.05);
    const SymbolSpectrum s = bloch_periodic(e, word, grid);
    for (const auto& per_x : s.eigs)
      for (const cplx lam : per_x)
        for (const Region& reg : cert.regions) CHECK_FALSE(reg.contains_interior(lam, 1e-9));
  }
}

TEST_CASE("degenerate certificates") {
  // Vanishing determinant: no inner disc, but the annulus persists when the
  // first block norm stays below one.
  const UnitaryEmbedding z = family_g0({0.4, 0.9});
  const TridiagonalBlockData bd = tridiag_blocks(z);
  const Certificate cert = certified_resolvent(z, 0.1, bd);
  for (const Region& r : cert.regions) CHECK(r.kind != Region::Kind::Disc);
  bool has_annulus = false;
  for (const Region& r : cert.regions) has_annulus |= r.kind == Region::Kind::Annulus;
  CHECK(has_annulus == bd.gap_ok);
}

TEST_CASE("region boundaries and serialization") {
  for (const Region& r :
       {make_form_set(0.8, 0.3), make_form_set(2.0, 0.3), make_delta_set(0.7, 0.4),
        make_gamma_set(0.9, 0.25, 0.8), make_annulus(0.7, 0.0), make_disc(0.0, 0.4),
        make_half_plane(1.0, 0.8)}) {
    CHECK_FALSE(r.boundary().empty());
    CHECK_FALSE(r.to_json().empty());
  }
}
