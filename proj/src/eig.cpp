#include "nuband/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nuband/rng.hpp"

namespace nuband {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Parlett-Reinsch balancing with radix-2 scaling; exact diagonal similarity.
void balance_inplace(Mat& a) {
  const int n = a.rows();
  const double radix = 2.0;
  bool done = false;
  int guard = 0;
  while (!done && guard++ < 100) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / radix) {
        c *= radix;
        r /= radix;
        f *= radix;
      }
      while (c >= r * radix) {
        c /= radix;
        r *= radix;
        f /= radix;
      }
      if ((c + r) < 0.95 * s && f != 1.0) {
        done = false;
        for (int j = 0; j < n; ++j) a(i, j) /= f;
        for (int j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form (eigenvalues only, no
// accumulation of the transformation).
void hessenberg_inplace(Mat& a) {
  const int n = a.rows();
  Vec v(static_cast<size_t>(n));
  for (int k = 0; k + 2 < n; ++k) {
    double colnorm = 0.0;
    for (int i = k + 1; i < n; ++i) colnorm += abs2(a(i, k));
    colnorm = std::sqrt(colnorm);
    if (colnorm <= 0.0) continue;
    const cplx x0 = a(k + 1, k);
    const cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
    const cplx alpha = -phase * colnorm;
    // v = x - alpha e1, reflection P = I - 2 v v* / (v* v)
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[static_cast<size_t>(i)] = a(i, k);
      if (i == k + 1) v[static_cast<size_t>(i)] -= alpha;
      vnorm2 += abs2(v[static_cast<size_t>(i)]);
    }
    if (vnorm2 <= 0.0) continue;
    const double inv = 2.0 / vnorm2;
    // A <- P A: rows k+1..n-1
    for (int j = k; j < n; ++j) {
      cplx dot = 0.0;
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[static_cast<size_t>(i)]) * a(i, j);
      dot *= inv;
      for (int i = k + 1; i < n; ++i) a(i, j) -= dot * v[static_cast<size_t>(i)];
    }
    // A <- A P: cols k+1..n-1
    for (int i = 0; i < n; ++i) {
      cplx dot = 0.0;
      for (int j = k + 1; j < n; ++j) dot += a(i, j) * v[static_cast<size_t>(j)];
      dot *= inv;
      for (int j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[static_cast<size_t>(j)]);
    }
    for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  cplx s;
};

// Unitary rotation with [c, s; -conj(s), c] (f, g)^T = (r, 0)^T, c real.
Givens make_givens(cplx f, cplx g) {
  if (g == cplx(0.0)) return {1.0, cplx(0.0)};
  if (f == cplx(0.0)) {
    return {0.0, std::conj(g) / std::abs(g)};
  }
  const double af = std::abs(f);
  const double d = std::sqrt(abs2(f) + abs2(g));
  return {af / d, (f / af) * std::conj(g) / d};
}

}  // namespace

std::pair<cplx, cplx> eig2(cplx a, cplx b, cplx c, cplx d) {
  const cplx tr = a + d;
  const cplx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
  return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

std::vector<cplx> eigvals(Mat a, const EigOptions& opt) {
  const int n = a.rows();
  if (n == 0) return {};
  if (n != a.cols()) throw std::invalid_argument("eigvals: matrix must be square");
  if (n == 1) return {a(0, 0)};
  if (opt.balance) balance_inplace(a);
  hessenberg_inplace(a);

  std::vector<cplx> eig(static_cast<size_t>(n));
  const double anorm = std::max(a.max_abs(), 1e-300);
  int hi = n - 1;
  int steps = 0;
  const int max_steps = std::max(50, opt.max_steps_per_dim * n);
  int since_deflation = 0;

  while (hi >= 0) {
    // Zero out negligible subdiagonals, then find the active block [lo, hi].
    // After several stalled sweeps the threshold falls back to the global
    // norm scale; setting such an entry to zero is a backward-stable
    // perturbation and breaks rounding-noise plateaus.
    const double floor_scale = since_deflation > 10 ? 8.0 * kEps * anorm : 0.0;
    int lo = hi;
    while (lo > 0) {
      const double sub = std::abs(a(lo, lo - 1));
      double scale = std::abs(a(lo, lo)) + std::abs(a(lo - 1, lo - 1));
      if (scale == 0.0) scale = anorm;
      if (sub <= std::max(kEps * scale, floor_scale)) {
        a(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[static_cast<size_t>(hi)] = a(hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (lo == hi - 1) {
      // Isolated 2x2 block: closed form, immune to double-eigenvalue stalls.
      auto [l1, l2] = eig2(a(lo, lo), a(lo, hi), a(hi, lo), a(hi, hi));
      eig[static_cast<size_t>(hi)] = l1;
      eig[static_cast<size_t>(lo)] = l2;
      hi -= 2;
      since_deflation = 0;
      continue;
    }
    if (++steps > max_steps) throw NumericError("eigvals: QR iteration did not converge");

    // Wilkinson shift from the trailing 2x2 of the active block.
    cplx shift;
    {
      const cplx p = a(hi - 1, hi - 1), q = a(hi - 1, hi), r = a(hi, hi - 1), s = a(hi, hi);
      auto [l1, l2] = eig2(p, q, r, s);
      shift = (std::abs(l1 - s) < std::abs(l2 - s)) ? l1 : l2;
      if (++since_deflation % 12 == 0) {
        // Exceptional shift to break symmetric stalls.
        shift = s + cplx(std::abs(a(hi, hi - 1)) + 0.5 * std::abs(p), 0.0);
      }
    }

    // Explicit single-shift QR sweep on the active block.
    for (int i = lo; i <= hi; ++i) a(i, i) -= shift;
    std::vector<Givens> rot(static_cast<size_t>(hi - lo));
    for (int k = lo; k < hi; ++k) {
      const Givens g = make_givens(a(k, k), a(k + 1, k));
      rot[static_cast<size_t>(k - lo)] = g;
      for (int j = k; j <= hi; ++j) {
        const cplx t1 = a(k, j), t2 = a(k + 1, j);
        a(k, j) = g.c * t1 + g.s * t2;
        a(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
      }
      a(k + 1, k) = 0.0;
    }
    // R Q: right-multiply by the adjoint rotations; fills one subdiagonal back.
    for (int k = lo; k < hi; ++k) {
      const Givens g = rot[static_cast<size_t>(k - lo)];
      for (int i = lo; i <= std::min(hi, k + 1); ++i) {
        const cplx t1 = a(i, k), t2 = a(i, k + 1);
        a(i, k) = t1 * g.c + t2 * std::conj(g.s);
        a(i, k + 1) = -t1 * g.s + t2 * g.c;
      }
    }
    for (int i = lo; i <= hi; ++i) a(i, i) += shift;
    (void)anorm;
  }
  return eig;
}

std::vector<std::pair<cplx, Vec>> eigpairs(const Mat& a, const EigOptions& opt) {
  const int n = a.rows();
  const std::vector<cplx> lam = eigvals(a, opt);
  std::vector<std::pair<cplx, Vec>> out;
  out.reserve(lam.size());
  const double scale = std::max(a.max_abs(), 1e-300);
  Rng rng(0x9a1fULL);
  for (const cplx l : lam) {
    // Inverse iteration on (A - l I); the tiny-pivot floor in DenseLU keeps a
    // singular shift harmless.
    Mat shifted = a;
    for (int i = 0; i < n; ++i) shifted(i, i) -= l;
    DenseLU lu(shifted);
    Vec x(static_cast<size_t>(n));
    for (auto& v : x) v = rng.gaussian_complex();
    vec_scale(x, 1.0 / vec_norm(x));
    for (int it = 0; it < 4; ++it) {
      lu.solve(x);
      const double nn = vec_norm(x);
      if (!(nn > 0.0) || !std::isfinite(nn)) break;
      vec_scale(x, 1.0 / nn);
    }
    (void)scale;
    out.emplace_back(l, std::move(x));
  }
  return out;
}

double spectral_radius_of(const Mat& a) {
  double r = 0.0;
  for (const cplx l : eigvals(a)) r = std::max(r, std::abs(l));
  return r;
}

}  // namespace nuband
