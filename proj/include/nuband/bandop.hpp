#pragma once

#include <iosfwd>
#include <string>

#include "nuband/coin.hpp"
#include "nuband/matrix.hpp"
#include "nuband/phase.hpp"
#include "vendor_json_fwd.hpp"

namespace nuband {

enum class Boundary { Open, Periodic };
enum class BandKind { T, V, K, Ttilde, Generic };

// Finite section of a five-diagonal band operator. The payload is dense for
// simplicity (desk scale); structure metadata rides along for the fast
// solvers and the exporters.
struct BandMatrix {
  int dim = 0;
  Boundary bc = Boundary::Periodic;
  BandKind kind = BandKind::Generic;
  Mat m;

  // Sparse CSV export: "row,col,re,im" per structurally nonzero entry.
  void write_csv(std::ostream& os) const;
};

nlohmann::json band_manifest(const UnitaryEmbedding& emb, const PhaseField& phases, int M,
                             Boundary bc, BandKind kind);

// 2M x 2M section of the random band contraction. Column 2j carries the
// coin's first column to rows 2j-1 and 2j+2, column 2j+1 its second column,
// each entry multiplied by the random phase of its destination row:
//   entry(2j-1, 2j)   = e^{i w(2j-1)} gamma     entry(2j-1, 2j+1) = e^{i w(2j-1)} delta
//   entry(2j+2, 2j)   = e^{i w(2j+2)} alpha     entry(2j+2, 2j+1) = e^{i w(2j+2)} beta
// Rows wrap modulo 2M under periodic boundary conditions and are dropped for
// open ones. The phase index is the (wrapped) destination row.
BandMatrix build_T(const UnitaryEmbedding& emb, const PhaseField& phases, int M, Boundary bc);

// Same structure, arbitrary 2x2 coin (used for the unitary polar factor).
BandMatrix build_band_from_coin(const CoinContraction& coin, const PhaseField& phases, int M,
                                Boundary bc, BandKind kind);

// Diagonal phase factor of the factorization T(phases) = D * T(zero phases).
Mat phase_diagonal(const PhaseField& phases, int dim);

// Exact polar decomposition T = V K: V unitary with the same band structure,
// K the deterministic 2x2-block-diagonal square root of T*T with spectrum
// {1, g}. P1, P2 are the spectral projectors of K.
struct PolarParts {
  BandMatrix V;
  BandMatrix K;
  Mat P1, P2;
  bool g_is_one = false;  // q = s = 0 limit: K = I, V = T
};
PolarParts build_polar(const UnitaryEmbedding& emb, const PhaseField& phases, int M, Boundary bc);

// Hopping coefficients of the four block compressions P_i V P_j expressed in
// the per-cell eigenbases of K. Index [i][j] is 0-based for blocks (i+1,j+1).
struct TridiagonalBlockData {
  cplx w_plus[2][2];
  cplx w_minus[2][2];
  double norm[2][2];  // |w_plus| + |w_minus|
  double rV = 0.0;    // inner radius of the certified resolvent annulus
  bool gap_ok = false;  // spectral radius < 1 criterion
};
// Requires g < 1 (the block data degenerates in the unitary limit).
TridiagonalBlockData tridiag_blocks(const UnitaryEmbedding& emb);

// M x M section (cells k = 0..M-1, periodic) of the compression P_i V P_j in
// the K eigenbases: entry(k-1, k) = e^{i w(2k-1)} w_plus, entry(k+1, k) =
// e^{i w(2k+2)} w_minus.
Mat compression_vjk(const UnitaryEmbedding& emb, const PhaseField& phases, int M, int i, int j);

// M x M compression of T^2 to the even-cell subspace (spanned by sites 4k,
// 4k+1) after relabeling, built from build_T at size 2M, periodic. M even.
BandMatrix build_Ttilde(const UnitaryEmbedding& emb, const PhaseField& phases, int M);

// The same operator assembled as the product of the two 2x2-block-diagonal
// factors (odd-offset blocks times even-offset blocks); must agree with
// build_Ttilde entrywise.
Mat ttilde_factorized(const UnitaryEmbedding& emb, const PhaseField& phases, int M);

// Structural classification with closed-form spectra where available.
struct StructureFlags {
  bool cnu = false;             // g<1, |alpha|<1, |delta|<1
  bool v_offdiagonal = false;   // diagonal compressions vanish (alpha = delta = 0)
  bool v_diagonal = false;      // off-diagonal compressions vanish (beta = gamma = 0)
  bool alpha_delta_zero = false;
  bool beta_gamma_zero = false;
  // alpha = delta = 0: spectrum is the pairs +-sqrt(g) e^{i theta/2}
  // e^{i(w_{2j+1}+w_{2j+2})/2}; beta = gamma = 0: unit circle union g times it.
  double closed_g = 0.0;
  double closed_theta = 0.0;
  std::string closed_form;  // empty when no closed form applies
};
StructureFlags classify_structure(const UnitaryEmbedding& emb);

}  // namespace nuband
