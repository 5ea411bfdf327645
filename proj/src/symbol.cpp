#include "nuband/symbol.hpp"

#include <algorithm>
#include <cmath>

#include "nuband/eig.hpp"

namespace nuband {

Mat symbol_T(const CoinContraction& coin, double x) {
  Mat m(2, 2);
  m(0, 0) = coin.alpha * std::polar(1.0, 2.0 * x);
  m(0, 1) = coin.beta * std::polar(1.0, x);
  m(1, 0) = coin.gamma * std::polar(1.0, -x);
  m(1, 1) = coin.delta * std::polar(1.0, -2.0 * x);
  return m;
}

std::pair<cplx, cplx> lambda_pm(const CoinContraction& coin, double x) {
  const cplx tr = coin.alpha * std::polar(1.0, 2.0 * x) + coin.delta * std::polar(1.0, -2.0 * x);
  const cplx det = coin.alpha * coin.delta - coin.beta * coin.gamma;
  const cplx disc = std::sqrt(tr * tr - 4.0 * det);
  return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

std::vector<cplx> SymbolSpectrum::points() const {
  std::vector<cplx> out;
  for (const auto& per_x : eigs) out.insert(out.end(), per_x.begin(), per_x.end());
  return out;
}

std::vector<double> uniform_grid(int n) {
  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = two_pi * i / n;
  return g;
}

namespace {
void finalize_mods(SymbolSpectrum& s) {
  double lo = 1e300, hi = 0.0;
  for (const auto& per_x : s.eigs)
    for (const cplx z : per_x) {
      lo = std::min(lo, std::abs(z));
      hi = std::max(hi, std::abs(z));
    }
  s.min_mod = (hi == 0.0 && lo > hi) ? 0.0 : lo;
  s.max_mod = hi;
}
}  // namespace

SymbolSpectrum ti_spectrum(const UnitaryEmbedding& emb, const std::vector<double>& xgrid) {
  if (xgrid.empty()) throw std::invalid_argument("ti_spectrum: empty grid");
  SymbolSpectrum s;
  s.xs = xgrid;
  s.eigs.reserve(xgrid.size());
  for (const double x : xgrid) {
    auto [l1, l2] = lambda_pm(emb, x);
    s.eigs.push_back({l1, l2});
  }
  finalize_mods(s);
  return s;
}

Mat bloch_symbol(const UnitaryEmbedding& emb, const PeriodicWord& word, double x) {
  const int l = word.size();
  if (l < 2 || l % 2 != 0)
    throw std::invalid_argument("bloch_symbol: word length must be even and >= 2");
  Mat m(l, l);
  const cplx right = std::polar(1.0, x), left = std::polar(1.0, -x);
  auto put = [&](int row, int col, cplx base) {
    cplx crossing = 1.0;
    int r = row;
    while (r < 0) {
      r += l;
      crossing *= left;
    }
    while (r >= l) {
      r -= l;
      crossing *= right;
    }
    m(r, col) += std::polar(1.0, word.phases[static_cast<size_t>(r)]) * base * crossing;
  };
  const CoinContraction c = emb.coin();
  for (int j = 0; 2 * j < l; ++j) {
    put(2 * j - 1, 2 * j, c.gamma);
    put(2 * j + 2, 2 * j, c.alpha);
    put(2 * j - 1, 2 * j + 1, c.delta);
    put(2 * j + 2, 2 * j + 1, c.beta);
  }
  return m;
}

SymbolSpectrum bloch_periodic(const UnitaryEmbedding& emb, const PeriodicWord& word,
                              const std::vector<double>& xgrid) {
  if (xgrid.empty()) throw std::invalid_argument("bloch_periodic: empty grid");
  SymbolSpectrum s;
  s.xs = xgrid;
  s.eigs.reserve(xgrid.size());
  const int l = word.size();
  for (const double x : xgrid) {
    const Mat m = bloch_symbol(emb, word, x);
    if (l == 2) {
      auto [l1, l2] = eig2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
      s.eigs.push_back({l1, l2});
    } else {
      s.eigs.push_back(eigvals(m));
    }
  }
  finalize_mods(s);
  return s;
}

Mat ttilde_bloch_symbol(const UnitaryEmbedding& emb, const PeriodicWord& word, double x) {
  const int l2 = word.size();
  if (l2 < 4 || l2 % 4 != 0)
    throw std::invalid_argument("ttilde_bloch_symbol: word length must be a multiple of 4");
  const int l = l2 / 2;
  const cplx right = std::polar(1.0, x), left = std::polar(1.0, -x);
  const cplx blk[2][2] = {{emb.gamma, emb.delta}, {emb.alpha, emb.beta}};
  auto ph = [&](int j) { return std::polar(1.0, word.phases[static_cast<size_t>(((j % l2) + l2) % l2)]); };
  Mat beven(l, l), bodd(l, l);
  for (int k = 0; 2 * k < l; ++k) {
    const int r0 = 2 * k, r1 = 2 * k + 1;
    beven(r0, r0) = ph(4 * k - 1) * blk[0][0];
    beven(r0, r1) = ph(4 * k - 1) * blk[0][1];
    beven(r1, r0) = ph(4 * k + 2) * blk[1][0];
    beven(r1, r1) = ph(4 * k + 2) * blk[1][1];
    const int s0 = 2 * k + 1;
    const int s1raw = 2 * k + 2;
    const bool wraps = s1raw >= l;
    const int s1 = wraps ? s1raw - l : s1raw;
    // Entries into the wrapped site cross the boundary rightward; entries out
    // of it reach leftward.
    bodd(s0, s0) += ph(4 * k + 1) * blk[0][0];
    bodd(s0, s1) += ph(4 * k + 1) * blk[0][1] * (wraps ? left : cplx(1.0));
    bodd(s1, s0) += ph(4 * k + 4) * blk[1][0] * (wraps ? right : cplx(1.0));
    bodd(s1, s1) += ph(4 * k + 4) * blk[1][1];
  }
  return bodd * beven;
}

HullEstimate ergodic_hull(const UnitaryEmbedding& emb, const PhaseField& dist, int lmax,
                          int words_per_l, int xsamples, std::uint64_t seed) {
  HullEstimate h;
  h.lmax = lmax;
  h.words_per_l = words_per_l;
  const std::vector<double> grid = uniform_grid(xsamples);
  Rng rng(seed);
  auto draw_phase = [&]() -> double {
    switch (dist.dist) {
      case PhaseDist::PointMass:
        return dist.theta0;
      case PhaseDist::UniformInterval:
        return rng.uniform(-dist.eps, dist.eps);
      case PhaseDist::UniformTorus:
        return rng.uniform(0.0, two_pi);
      case PhaseDist::Explicit:
        throw std::invalid_argument("ergodic_hull: explicit phase fields have no distribution");
    }
    return 0.0;
  };
  for (int l = 2; l <= lmax; l += 2) {
    const int nwords = dist.dist == PhaseDist::PointMass ? 1 : words_per_l;
    for (int w = 0; w < nwords; ++w) {
      PeriodicWord word;
      word.phases.resize(static_cast<size_t>(l));
      for (auto& p : word.phases) p = draw_phase();
      const SymbolSpectrum s = bloch_periodic(emb, word, grid);
      const std::vector<cplx> pts = s.points();
      h.points.insert(h.points.end(), pts.begin(), pts.end());
    }
  }
  if (dist.dist == PhaseDist::UniformTorus) {
    // Rotating the translation-invariant spectrum through all phases fills the
    // annulus spanned by the symbol eigenvalue moduli.
    h.has_annulus = true;
    double lo = 1e300, hi = 0.0;
    for (const double x : uniform_grid(std::max(xsamples, 4096))) {
      auto [l1, l2] = lambda_pm(emb, x);
      for (const cplx z : {l1, l2}) {
        const double m = std::abs(z);
        if (m < 1e-12) {
          h.includes_zero = true;  // vanishing branch (g = 0)
          continue;
        }
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      }
    }
    h.r_in = lo > hi ? 0.0 : lo;
    h.r_out = hi;
  }
  return h;
}

cplx ScalarSymbol::eval(double x) const {
  return w_plus * std::polar(1.0, x) + w_minus * std::polar(1.0, -x);
}

ScalarSymbol vjj_symbol(const UnitaryEmbedding& emb, int j) {
  if (j != 1 && j != 2) throw std::invalid_argument("vjj_symbol: j must be 1 or 2");
  const TridiagonalBlockData bd = tridiag_blocks(emb);
  ScalarSymbol s;
  s.w_plus = bd.w_plus[j - 1][j - 1];
  s.w_minus = bd.w_minus[j - 1][j - 1];
  const double p = std::abs(s.w_plus), m = std::abs(s.w_minus);
  s.semi_major = p + m;
  s.semi_minor = std::abs(p - m);
  s.rotation = (p == 0.0 || m == 0.0) ? 0.0 : 0.5 * (std::arg(s.w_plus) + std::arg(s.w_minus));
  return s;
}

std::vector<ArcSet::Gap> ArcSet::gaps() const {
  std::vector<Gap> out;
  if (covered.empty()) return out;
  for (size_t i = 0; i < covered.size(); ++i) {
    const double hi = covered[i].second;
    const double next_lo =
        (i + 1 < covered.size()) ? covered[i + 1].first : covered[0].first + two_pi;
    const double width = next_lo - hi;
    if (width > 2.0 * guard) {
      Gap g;
      g.half_width = 0.5 * (width - 2.0 * guard);
      g.rotation = wrap_angle(hi + guard + g.half_width);
      out.push_back(g);
    }
  }
  return out;
}

ArcSet unitary_symbol_arcs(const CoinContraction& vcoin, int nsamples) {
  std::vector<double> angles;
  angles.reserve(static_cast<size_t>(2 * nsamples));
  for (int i = 0; i < nsamples; ++i) {
    const double x = two_pi * i / nsamples;
    auto [l1, l2] = lambda_pm(vcoin, x);
    angles.push_back(std::arg(l1));
    angles.push_back(std::arg(l2));
  }
  std::sort(angles.begin(), angles.end());
  ArcSet arcs;
  // Symbol eigenvalue angles move at a bounded rate in x, so consecutive
  // sampled angles within one arc cannot be farther apart than a few grid
  // steps; wider separations are genuine gaps.
  arcs.guard = 8.0 * two_pi / nsamples;
  double lo = angles[0], hi = angles[0];
  std::vector<std::pair<double, double>> cov;
  for (size_t i = 1; i < angles.size(); ++i) {
    if (angles[i] - hi > arcs.guard) {
      cov.emplace_back(lo, hi);
      lo = angles[i];
    }
    hi = angles[i];
  }
  cov.emplace_back(lo, hi);
  // Merge across the branch cut at +-pi.
  if (cov.size() > 1) {
    const double wrap_gap = (cov.front().first + two_pi) - cov.back().second;
    if (wrap_gap <= arcs.guard) {
      cov.front().first = cov.back().first - two_pi;
      cov.pop_back();
    }
  }
  arcs.covered = std::move(cov);
  return arcs;
}

}  // namespace nuband
