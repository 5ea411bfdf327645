#include "nuband/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nuband {

Svd jacobi_svd(const Mat& a_in, int max_sweeps, double tol) {
  Mat a = a_in;
  const int m = a.rows(), n = a.cols();
  if (m < n) throw std::invalid_argument("jacobi_svd: expects rows >= cols");
  Mat v = Mat::identity(n);

  // One-sided Jacobi: orthogonalize column pairs with unitary plane rotations.
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double worst = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0;
        cplx apq = 0.0;
        for (int i = 0; i < m; ++i) {
          app += abs2(a(i, p));
          aqq += abs2(a(i, q));
          apq += std::conj(a(i, p)) * a(i, q);
        }
        const double mag = std::abs(apq);
        const double scale = std::sqrt(app * aqq);
        if (scale > 0.0) worst = std::max(worst, mag / scale);
        if (mag <= tol * scale || scale == 0.0) continue;
        // Gram block [[app, apq],[conj(apq), aqq]] = D G_r D* with
        // D = diag(e^{i phi}, 1); diagonalize G_r by a real Jacobi rotation.
        const cplx phase = apq / mag;
        const double zeta = (aqq - app) / (2.0 * mag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        // J = D J_r: col_p' = e^{i phi} cs col_p - sn col_q,
        //            col_q' = e^{i phi} sn col_p + cs col_q.
        for (int i = 0; i < m; ++i) {
          const cplx ap = a(i, p), aq = a(i, q);
          a(i, p) = phase * cs * ap - sn * aq;
          a(i, q) = phase * sn * ap + cs * aq;
        }
        for (int i = 0; i < n; ++i) {
          const cplx vp = v(i, p), vq = v(i, q);
          v(i, p) = phase * cs * vp - sn * vq;
          v(i, q) = phase * sn * vp + cs * vq;
        }
      }
    }
    if (worst <= tol) break;
    if (sweep == max_sweeps - 1) throw NumericError("jacobi_svd: rotation sweeps did not converge");
  }

  std::vector<double> sigma(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += abs2(a(i, j));
    sigma[static_cast<size_t>(j)] = std::sqrt(s);
  }
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return sigma[static_cast<size_t>(i)] > sigma[static_cast<size_t>(j)]; });

  Svd out;
  out.u = Mat(m, n);
  out.v = Mat(n, n);
  out.sigma.resize(static_cast<size_t>(n));
  const double smax = sigma.empty() ? 0.0 : sigma[static_cast<size_t>(order[0])];
  int rank = 0;
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<size_t>(j)];
    const double s = sigma[static_cast<size_t>(src)];
    out.sigma[static_cast<size_t>(j)] = s;
    for (int i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    if (s > smax * 1e-14 && s > 0.0) {
      ++rank;
      for (int i = 0; i < m; ++i) out.u(i, j) = a(i, src) / s;
    }
  }
  // Complete U on the cokernel by Gram-Schmidt so it always has orthonormal
  // columns (needed by polar_decompose for rank-deficient inputs).
  for (int j = rank; j < n; ++j) {
    Vec e(static_cast<size_t>(m));
    for (int trial = 0; trial < m; ++trial) {
      std::fill(e.begin(), e.end(), cplx(0.0));
      e[static_cast<size_t>((j + trial) % m)] = 1.0;
      for (int c = 0; c < j; ++c) {
        cplx d = 0.0;
        for (int i = 0; i < m; ++i) d += std::conj(out.u(i, c)) * e[static_cast<size_t>(i)];
        for (int i = 0; i < m; ++i) e[static_cast<size_t>(i)] -= d * out.u(i, c);
      }
      const double nn = vec_norm(e);
      if (nn > 1e-6) {
        for (int i = 0; i < m; ++i) out.u(i, j) = e[static_cast<size_t>(i)] / nn;
        break;
      }
    }
  }
  return out;
}

PolarPair polar_decompose(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("polar_decompose: square input expected");
  const Svd s = jacobi_svd(a);
  const int n = a.rows();
  PolarPair out;
  out.w = s.u * s.v.adjoint();
  Mat sv(n, n);
  for (int i = 0; i < n; ++i) sv(i, i) = s.sigma[static_cast<size_t>(i)];
  out.p = s.v * sv * s.v.adjoint();
  return out;
}

double operator_norm_of(const Mat& a) {
  const int m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) return 0.0;
  if (std::max(m, n) <= 48) {
    const Svd s = (m >= n) ? jacobi_svd(a) : jacobi_svd(a.adjoint());
    return s.sigma.empty() ? 0.0 : s.sigma[0];
  }
  Rng rng(0xa017ULL);
  Vec x(static_cast<size_t>(n));
  for (auto& v : x) v = rng.gaussian_complex();
  vec_scale(x, 1.0 / vec_norm(x));
  double est = 0.0, prev = -1.0;
  for (int it = 0; it < 20000; ++it) {
    Vec y = a.apply(x);
    Vec z = a.apply_adjoint(y);
    const double nn = vec_norm(z);
    est = vec_norm(y);  // ||A x|| with unit x
    if (nn == 0.0) return est;
    vec_scale(z, 1.0 / nn);
    x = std::move(z);
    if (prev >= 0.0 && std::abs(est - prev) <= 1e-13 * std::max(est, 1e-300)) break;
    prev = est;
  }
  return est;
}

double sigma_min_dense(const Mat& a, double rel_tol, int max_iter) {
  DenseLU lu(a);
  return sigma_min_with_solver(a, lu, rel_tol, max_iter);
}

}  // namespace nuband
