#pragma once

#include <utility>

#include "nuband/matrix.hpp"
#include "nuband/rng.hpp"
#include "vendor_json_fwd.hpp"

namespace nuband {

// 2x2 coin contraction with rows (alpha, beta), (gamma, delta).
struct CoinContraction {
  cplx alpha, beta, gamma, delta;
  Mat as_matrix() const;
};

// 3x3 unitary housing the coin in its corners:
//   [ alpha  r  beta  ]
//   [ q      g  s     ]
//   [ gamma  t  delta ]
// with g real in [0, 1] and chi = arg det(coin).
struct UnitaryEmbedding {
  cplx alpha, r, beta, q, s, gamma, t, delta;
  double g = 0.0;
  double chi = 0.0;

  Mat as_matrix() const;
  CoinContraction coin() const { return {alpha, beta, gamma, delta}; }
  // Coin of the unitary factor of the polar decomposition:
  // (1/(1+g)) [ alpha(1+g)-q r   beta(1+g)-s r ; gamma(1+g)-q t   delta(1+g)-s t ].
  CoinContraction v_coin() const;
};

struct FamilyParams {
  double xi;
  double eta;
};

// Extends the coin to a 3x3 unitary. The eigenvector gauge is fixed so the
// first nonzero component of the bordering vector is real and nonnegative,
// making the embedding reproducible (it is not unique otherwise).
// Throws std::invalid_argument if the coin is not a contraction and
// NumericError if the result fails the unitarity check (which happens exactly
// when the coin's largest singular value is not 1).
UnitaryEmbedding embed(const CoinContraction& c0, double tol = 1e-12);

// (|det|, arg det) of the coin; arg fixed to 0 when the determinant vanishes.
std::pair<double, double> det_g_chi(const CoinContraction& c0);

// Real orthogonal one-parameter-drift family; g = sin(xi).
UnitaryEmbedding family_drift(const FamilyParams& p);
// Real orthogonal family with vanishing coin determinant (g = 0);
// |alpha| + |delta| = sin(xi + eta).
UnitaryEmbedding family_g0(const FamilyParams& p);

// For a contraction W (verified, else std::invalid_argument): whether W is
// unitary within tol. For contractions this is equivalent to | |det W| - 1 |
// being small, which the tests check independently.
bool contraction_is_unitary(const Mat& w, double tol);

// Coin specification from JSON: either {"family": "drift"|"g0", "xi":, "eta":}
// or explicit entries {"alpha": [re, im], "beta": ..., "gamma": ..., "delta": ...}.
UnitaryEmbedding coin_from_json(const nlohmann::json& j);
nlohmann::json coin_to_json(const UnitaryEmbedding& e);

// Deterministic random generators used by tests and sweeps.
Mat random_unitary(Rng& rng, int n);
// Corner projection of a random 3x3 unitary: always embeddable.
CoinContraction random_embeddable_coin(Rng& rng);
// Coin with singular values {1, g}: embeddable with prescribed |det| = g.
CoinContraction random_coin_with_g(Rng& rng, double g);

}  // namespace nuband
