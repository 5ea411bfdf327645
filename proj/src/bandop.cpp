#include "nuband/bandop.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace nuband {

namespace {
constexpr double kUnitaryG = 1.0 - 1e-9;  // g above this is treated as 1

int wrap(int i, int n) { return ((i % n) + n) % n; }
}  // namespace

void BandMatrix::write_csv(std::ostream& os) const {
  os << "row,col,re,im\n";
  char buf[96];
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const cplx v = m(i, j);
      if (v == cplx(0.0)) continue;
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", i, j, v.real(), v.imag());
      os << buf;
    }
  }
}

nlohmann::json band_manifest(const UnitaryEmbedding& emb, const PhaseField& phases, int M,
                             Boundary bc, BandKind kind) {
  const char* kind_name[] = {"T", "V", "K", "Ttilde", "generic"};
  const char* dist_name[] = {"point", "uniform", "torus", "explicit"};
  return nlohmann::json{
      {"kind", kind_name[static_cast<int>(kind)]},
      {"M", M},
      {"bc", bc == Boundary::Periodic ? "periodic" : "open"},
      {"coin", coin_to_json(emb)},
      {"phases",
       {{"distribution", dist_name[static_cast<int>(phases.dist)]},
        {"eps", phases.eps},
        {"theta0", phases.theta0},
        {"seed", phases.seed}}},
  };
}

BandMatrix build_band_from_coin(const CoinContraction& coin, const PhaseField& phases, int M,
                                Boundary bc, BandKind kind) {
  if (M < 2) throw std::invalid_argument("build_T: M must be at least 2");
  const int n = 2 * M;
  BandMatrix out;
  out.dim = n;
  out.bc = bc;
  out.kind = kind;
  out.m = Mat(n, n);
  auto put = [&](int row, int col, cplx base) {
    if (bc == Boundary::Periodic) {
      const int r = wrap(row, n);
      out.m(r, col) += std::polar(1.0, phases.phase(r)) * base;
    } else if (row >= 0 && row < n) {
      out.m(row, col) += std::polar(1.0, phases.phase(row)) * base;
    }
  };
  for (int j = 0; j < M; ++j) {
    put(2 * j - 1, 2 * j, coin.gamma);
    put(2 * j + 2, 2 * j, coin.alpha);
    put(2 * j - 1, 2 * j + 1, coin.delta);
    put(2 * j + 2, 2 * j + 1, coin.beta);
  }
  return out;
}

BandMatrix build_T(const UnitaryEmbedding& emb, const PhaseField& phases, int M, Boundary bc) {
  return build_band_from_coin(emb.coin(), phases, M, bc, BandKind::T);
}

Mat phase_diagonal(const PhaseField& phases, int dim) {
  Mat d(dim, dim);
  for (int i = 0; i < dim; ++i) d(i, i) = std::polar(1.0, phases.phase(i));
  return d;
}

PolarParts build_polar(const UnitaryEmbedding& emb, const PhaseField& phases, int M, Boundary bc) {
  const double g = emb.g;
  const int n = 2 * M;
  PolarParts out;
  if (g >= kUnitaryG) {
    // Unitary limit: the positive factor is the identity.
    out.g_is_one = true;
    out.V = build_T(emb, phases, M, bc);
    out.V.kind = BandKind::V;
    out.K.dim = n;
    out.K.bc = bc;
    out.K.kind = BandKind::K;
    out.K.m = Mat::identity(n);
    out.P1 = Mat::identity(n);
    out.P2 = Mat(n, n);
    return out;
  }
  const double qs2 = abs2(emb.q) + abs2(emb.s);  // = 1 - g^2 > 0
  // Per-cell positive block and spectral projectors, identical in every cell:
  //   kappa = (g|q|^2 + |s|^2, conj(q) s (g-1); q conj(s) (g-1), g|s|^2 + |q|^2) / (|q|^2+|s|^2)
  // with unit eigenvector (s, -q)/sqrt(|q|^2+|s|^2) for eigenvalue 1 and
  // (conj(q), conj(s))/sqrt(|q|^2+|s|^2) for eigenvalue g.
  const cplx k00 = (g * abs2(emb.q) + abs2(emb.s)) / qs2;
  const cplx k01 = std::conj(emb.q) * emb.s * (g - 1.0) / qs2;
  const cplx k10 = emb.q * std::conj(emb.s) * (g - 1.0) / qs2;
  const cplx k11 = (g * abs2(emb.s) + abs2(emb.q)) / qs2;
  const cplx v1[2] = {emb.s, -emb.q};
  const cplx v2[2] = {std::conj(emb.q), std::conj(emb.s)};

  out.K.dim = n;
  out.K.bc = bc;
  out.K.kind = BandKind::K;
  out.K.m = Mat(n, n);
  out.P1 = Mat(n, n);
  out.P2 = Mat(n, n);
  for (int k = 0; k < M; ++k) {
    const int b = 2 * k;
    out.K.m(b, b) = k00;
    out.K.m(b, b + 1) = k01;
    out.K.m(b + 1, b) = k10;
    out.K.m(b + 1, b + 1) = k11;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        out.P1(b + i, b + j) = v1[i] * std::conj(v1[j]) / qs2;
        out.P2(b + i, b + j) = v2[i] * std::conj(v2[j]) / qs2;
      }
    }
  }
  out.V = build_band_from_coin(emb.v_coin(), phases, M, bc, BandKind::V);
  return out;
}

TridiagonalBlockData tridiag_blocks(const UnitaryEmbedding& emb) {
  const double g = emb.g;
  if (g >= kUnitaryG)
    throw std::invalid_argument("tridiag_blocks: undefined in the unitary limit g = 1");
  const double den = 1.0 - g * g;
  const cplx q = emb.q, s = emb.s, r = emb.r, t = emb.t;
  const cplx a = emb.alpha, b = emb.beta, c = emb.gamma, d = emb.delta;
  const cplx sc_qd = s * c - q * d;  // s gamma - q delta
  const cplx sa_qb = s * a - q * b;  // s alpha - q beta

  TridiagonalBlockData out;
  out.w_plus[0][0] = -std::conj(q) * sc_qd / den;
  out.w_minus[0][0] = std::conj(s) * sa_qb / den;
  out.w_plus[1][1] = -s * t / den;
  out.w_minus[1][1] = -q * r / den;
  out.w_plus[1][0] = s * sc_qd / den;
  out.w_minus[1][0] = q * sa_qb / den;
  out.w_plus[0][1] = std::conj(q) * t / den;
  out.w_minus[0][1] = -std::conj(s) * r / den;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.norm[i][j] = std::abs(out.w_plus[i][j]) + std::abs(out.w_minus[i][j]);

  const double n11 = out.norm[0][0], n22 = out.norm[1][1];
  const double n21 = out.norm[1][0], n12 = out.norm[0][1];
  out.rV = 0.5 * (n11 + g * n22 + std::sqrt(sq(n11 - g * n22) + 4.0 * g * n21 * n12));
  if (n11 < 1.0) {
    const double denom = n21 * n12 + n22 * (1.0 - n11);
    out.gap_ok = denom <= 0.0 ? true : g < (1.0 - n11) / denom;
  }
  return out;
}

Mat compression_vjk(const UnitaryEmbedding& emb, const PhaseField& phases, int M, int i, int j) {
  if (i < 0 || i > 1 || j < 0 || j > 1) throw std::invalid_argument("compression_vjk: block index");
  const TridiagonalBlockData bd = tridiag_blocks(emb);
  const int nw = 2 * M;
  Mat w(M, M);
  for (int k = 0; k < M; ++k) {
    const int up = wrap(k - 1, M), dn = wrap(k + 1, M);
    w(up, k) += std::polar(1.0, phases.phase(wrap(2 * k - 1, nw))) * bd.w_plus[i][j];
    w(dn, k) += std::polar(1.0, phases.phase(wrap(2 * k + 2, nw))) * bd.w_minus[i][j];
  }
  return w;
}

BandMatrix build_Ttilde(const UnitaryEmbedding& emb, const PhaseField& phases, int M) {
  if (M < 2 || M % 2 != 0) throw std::invalid_argument("build_Ttilde: M must be even and >= 2");
  const BandMatrix t = build_T(emb, phases, M, Boundary::Periodic);  // dim 2M
  const Mat t2 = t.m * t.m;
  // Even-site cells of the doubled lattice: sites 4k, 4k+1 -> 2k, 2k+1.
  std::vector<int> idx;
  idx.reserve(static_cast<size_t>(M));
  for (int k = 0; k < M / 2; ++k) {
    idx.push_back(4 * k);
    idx.push_back(4 * k + 1);
  }
  BandMatrix out;
  out.dim = M;
  out.bc = Boundary::Periodic;
  out.kind = BandKind::Ttilde;
  out.m = t2.submatrix(idx, idx);
  return out;
}

Mat ttilde_factorized(const UnitaryEmbedding& emb, const PhaseField& phases, int M) {
  if (M < 2 || M % 2 != 0)
    throw std::invalid_argument("ttilde_factorized: M must be even and >= 2");
  const int nw = 2 * M;  // phase indices live on the underlying 2M sites
  const cplx blk[2][2] = {{emb.gamma, emb.delta}, {emb.alpha, emb.beta}};
  auto ph = [&](int j) { return std::polar(1.0, phases.phase(wrap(j, nw))); };
  // Block-diagonal factor on pairs (2k, 2k+1) with destination phases
  // (w_{4k-1}, w_{4k+2}) and on pairs (2k+1, 2k+2) with (w_{4k+1}, w_{4k+4}).
  Mat beven(M, M), bodd(M, M);
  for (int k = 0; k < M / 2; ++k) {
    const int r0 = 2 * k, r1 = 2 * k + 1;
    beven(r0, r0) = ph(4 * k - 1) * blk[0][0];
    beven(r0, r1) = ph(4 * k - 1) * blk[0][1];
    beven(r1, r0) = ph(4 * k + 2) * blk[1][0];
    beven(r1, r1) = ph(4 * k + 2) * blk[1][1];
    const int s0 = 2 * k + 1, s1 = wrap(2 * k + 2, M);
    bodd(s0, s0) = ph(4 * k + 1) * blk[0][0];
    bodd(s0, s1) = ph(4 * k + 1) * blk[0][1];
    bodd(s1, s0) = ph(4 * k + 4) * blk[1][0];
    bodd(s1, s1) = ph(4 * k + 4) * blk[1][1];
  }
  return bodd * beven;
}

StructureFlags classify_structure(const UnitaryEmbedding& emb) {
  constexpr double tol = 1e-12;
  StructureFlags f;
  const double aa = std::abs(emb.alpha), dd = std::abs(emb.delta);
  const double bb = std::abs(emb.beta), cc = std::abs(emb.gamma);
  f.alpha_delta_zero = aa <= tol && dd <= tol;
  f.beta_gamma_zero = bb <= tol && cc <= tol;
  f.cnu = emb.g < 1.0 - tol && aa < 1.0 - tol && dd < 1.0 - tol;
  if (emb.g < kUnitaryG) {
    const TridiagonalBlockData bd = tridiag_blocks(emb);
    f.v_offdiagonal = bd.norm[0][0] <= tol && bd.norm[1][1] <= tol;
    f.v_diagonal = bd.norm[0][1] <= tol && bd.norm[1][0] <= tol;
  } else {
    // Unitary coin: the splitting follows the coin zero pattern directly.
    f.v_offdiagonal = f.alpha_delta_zero;
    f.v_diagonal = f.beta_gamma_zero;
  }
  if (f.alpha_delta_zero) {
    // 2x2 cells with entries gamma, beta: eigenvalue pairs
    // +-sqrt(g) e^{i theta/2} e^{i(w+w')/2}, g = min(|beta|,|gamma|) and the
    // larger of the two has modulus one.
    f.closed_g = std::min(bb, cc);
    f.closed_theta = std::arg(emb.beta * emb.gamma);
    f.closed_form = "pm_sqrt_g_pairs";
  } else if (f.beta_gamma_zero) {
    f.closed_g = std::min(aa, dd);
    f.closed_form = "two_circles";
  }
  return f;
}

}  // namespace nuband
