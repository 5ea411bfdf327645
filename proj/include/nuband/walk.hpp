#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "nuband/coin.hpp"
#include "nuband/matrix.hpp"
#include "nuband/phase.hpp"

namespace nuband {

// 4x4 walk coin in the ordered letter basis {a, b, a^-1, b^-1}: the 3x3
// embedding occupies the {a, b, a^-1} block and the invariant letter b^-1
// carries a bare phase.
struct CoinU4 {
  UnitaryEmbedding emb;
  double theta = 0.0;
  Mat as_matrix() const;
};

enum class WalkGraph { Tree, Lattice };

// Letters index the coin basis: 0 = a, 1 = b, 2 = a^-1, 3 = b^-1.
inline constexpr int kLetterA = 0, kLetterB = 1, kLetterAInv = 2, kLetterBInv = 3;

// Sparse walk state on the truncated homogeneous tree (reduced words over
// {a, b, A, B}) or the square lattice [-bound, bound]^2. Random phases are a
// pure hash of (seed, vertex, letter), so states and the line reduction see
// identical realizations. Higher-coordination trees admit the same line
// reduction but are out of scope here.
struct WalkState {
  WalkGraph graph = WalkGraph::Tree;
  int bound = 0;  // tree depth cap / lattice half-side
  PhaseDist dist = PhaseDist::UniformTorus;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::unordered_map<std::string, std::array<cplx, 4>> amp;  // keyed by vertex

  double norm() const;
  cplx amplitude(const std::string& vertex, int letter) const;
  double omega(const std::string& vertex, int letter) const;
};

// Vertex keys: tree vertices are reduced words ("" is the root); lattice
// vertices are "x,y" integer pairs.
std::string tree_vertex(int m);  // a^m on the horizontal line
std::string lattice_vertex(int x, int y);
std::string walk_move(WalkGraph graph, const std::string& vertex, int letter);
int walk_depth(WalkGraph graph, const std::string& vertex);

WalkState make_basis_state(WalkGraph graph, int bound, PhaseDist dist, double eps,
                           std::uint64_t seed, const std::string& vertex, int letter);

// One step: coin update, coin-dependent shift, then destination phases.
// Throws std::invalid_argument if the support touches the truncation boundary
// (the identities below assume an untouched boundary).
WalkState step(const WalkState& state, const CoinU4& coin);

// Phases of the line reduction. The horizontal subspace is spanned by
// a^j x a and a^j x a^-1; line site 2j is (a^j, a) and site 2j+1 is
// (a^j, a^-1), and each inherits the walk phase of that (vertex, letter)
// slot. Worked example: j = -1 gives sites 2j = -2 <-> ("A", letter a) and
// 2j+1 = -1 <-> ("A", letter a^-1); on the lattice the vertex is (-1, 0).
PhaseField line_phase_field(WalkGraph graph, PhaseDist dist, double eps, std::uint64_t seed,
                            int jmin, int jmax);

// Max over steps n <= n_max, starting basis vectors on the horizontal line
// (|m| <= 1, both letters), and all line components, of the deviation between
// the walk matrix elements and the powers of the reduced band contraction.
// Requires bound >= n_max + 2.
double dilation_check(const CoinU4& coin, WalkGraph graph, int bound, int n_max, PhaseDist dist,
                      double eps, std::uint64_t seed);

// <psi, U^n psi> for psi = root x a, n = 0..n_max.
std::vector<cplx> walk_autocorrelation(const CoinU4& coin, WalkGraph graph, int bound, int n_max,
                                       PhaseDist dist, double eps, std::uint64_t seed);

// Max over n in [1, n_max] and starting letters {a, b, a^-1} of the amplitude
// at (start vertex, letter b); identically zero when the escape direction is
// never revisited.
double escape_check(const CoinU4& coin, WalkGraph graph, int bound, int n_max, PhaseDist dist,
                    double eps, std::uint64_t seed);

// Least-squares geometric rate fit of |a_n| over even n in [2, n_max],
// ignoring entries below the floor. Returns 0 when nothing to fit.
double autocorrelation_rate(const std::vector<cplx>& a, double floor = 1e-14);

}  // namespace nuband
