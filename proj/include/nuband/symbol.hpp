#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nuband/bandop.hpp"
#include "nuband/coin.hpp"
#include "nuband/matrix.hpp"
#include "nuband/phase.hpp"

namespace nuband {

// 2x2 translation-invariant symbol at quasimomentum x:
//   [ alpha e^{2ix}   beta e^{ix}  ]
//   [ gamma e^{-ix}   delta e^{-2ix} ]
Mat symbol_T(const CoinContraction& coin, double x);
inline Mat symbol_T(const UnitaryEmbedding& emb, double x) { return symbol_T(emb.coin(), x); }

// Unordered eigenvalue pair of the symbol: roots of
// z^2 - (alpha e^{2ix} + delta e^{-2ix}) z + (alpha delta - beta gamma).
std::pair<cplx, cplx> lambda_pm(const CoinContraction& coin, double x);
inline std::pair<cplx, cplx> lambda_pm(const UnitaryEmbedding& emb, double x) {
  return lambda_pm(emb.coin(), x);
}

struct SymbolSpectrum {
  std::vector<double> xs;
  std::vector<std::vector<cplx>> eigs;  // per x, unordered
  double min_mod = 0.0, max_mod = 0.0;

  std::vector<cplx> points() const;
};

std::vector<double> uniform_grid(int n);  // n samples of [0, 2pi)

// Spectrum of the translation-invariant operator: ranges of the two symbol
// eigenvalue branches sampled over the grid.
SymbolSpectrum ti_spectrum(const UnitaryEmbedding& emb, const std::vector<double>& xgrid);

// Even-length word of phases defining a periodic realization.
struct PeriodicWord {
  std::vector<double> phases;
  int size() const { return static_cast<int>(phases.size()); }
};

// l x l unit-cell symbol of the band operator with period-l phases. Hops that
// cross the cell boundary rightward pick up e^{+ix}, leftward e^{-ix}.
Mat bloch_symbol(const UnitaryEmbedding& emb, const PeriodicWord& word, double x);

// Union over the quasimomentum grid of the unit-cell symbol eigenvalues; this
// samples the spectrum of the periodic operator.
SymbolSpectrum bloch_periodic(const UnitaryEmbedding& emb, const PeriodicWord& word,
                              const std::vector<double>& xgrid);

// l x l symbol of the doubled operator built from the same period-2l phase
// word; its nonzero eigenvalues at quasimomentum x are the squares of the
// 2l-symbol eigenvalues of the underlying operator at the same x.
Mat ttilde_bloch_symbol(const UnitaryEmbedding& emb, const PeriodicWord& word, double x);

// Union of periodic-word spectra: an almost-sure lower bound for the spectrum
// of the random operator. For the full-torus distribution the rotation sweep
// of the translation-invariant spectrum gives the analytic modulus annulus.
struct HullEstimate {
  std::vector<cplx> points;
  int lmax = 0;
  int words_per_l = 0;
  bool has_annulus = false;   // full-torus distribution only
  double r_in = 0.0;          // analytic modulus range of the swept spectrum
  double r_out = 0.0;
  bool includes_zero = false;  // a symbol branch vanishes identically (g = 0)
  bool is_exact = false;      // equality known only in special cases; else lower bound
};
HullEstimate ergodic_hull(const UnitaryEmbedding& emb, const PhaseField& dist, int lmax,
                          int words_per_l, int xsamples, std::uint64_t seed);

// Scalar symbol of a diagonal compression: e^{ix} w_plus + e^{-ix} w_minus.
// Its range is an ellipse centered at 0 with semi-axes |w+|+|w-| and
// ||w+|-|w-||, rotated by (arg w+ + arg w-)/2.
struct ScalarSymbol {
  cplx w_plus, w_minus;
  double semi_major = 0.0, semi_minor = 0.0, rotation = 0.0;
  cplx eval(double x) const;
};
// j is 1 or 2; requires g < 1.
ScalarSymbol vjj_symbol(const UnitaryEmbedding& emb, int j);

// Covered arcs (angle intervals) of a unitary coin's symbol spectrum on the
// circle, detected by dense sampling; gaps narrower than the guard band are
// closed, so reported gaps are conservative.
struct ArcSet {
  std::vector<std::pair<double, double>> covered;  // [lo, hi] in (-pi, pi], sorted
  double guard = 0.0;
  // Complementary gaps as (half-width, bisector rotation) pairs.
  struct Gap {
    double half_width;
    double rotation;
  };
  std::vector<Gap> gaps() const;
};
ArcSet unitary_symbol_arcs(const CoinContraction& vcoin, int nsamples = 8192);

}  // namespace nuband
