#pragma once

#include <cmath>
#include <vector>

#include "nuband/matrix.hpp"
#include "nuband/rng.hpp"

namespace nuband {

struct Svd {
  Mat u;                      // m x n, orthonormal columns
  std::vector<double> sigma;  // descending
  Mat v;                      // n x n unitary; A = U diag(sigma) V*
};

// One-sided Jacobi SVD; accurate to machine precision for desk-scale sizes.
Svd jacobi_svd(const Mat& a, int max_sweeps = 60, double tol = 1e-15);

// Polar factors A = W P with W unitary (fixed on the range for rank-deficient
// A, completed unitarily on the cokernel) and P Hermitian PSD.
struct PolarPair {
  Mat w;
  Mat p;
};
PolarPair polar_decompose(const Mat& a);

// Largest singular value: power iteration on A*A with a Jacobi fallback for
// small matrices.
double operator_norm_of(const Mat& a);

// Smallest singular value of a square A via inverse iteration on (A*A)^{-1},
// driven by a solver exposing solve()/solve_adj(). The final estimate is the
// Rayleigh value ||A x|| at the converged right singular vector.
// early_exit_below > 0 stops the iteration once the estimate (an upper bound
// on sigma_min) drops under that level; grid sweeps use it since values far
// below the smallest indicator threshold need no further resolution.
// apply(x) must evaluate A x for the same A the solver factors.
template <class ApplyFn, class Solver>
double sigma_min_with_apply(int n, const ApplyFn& apply, const Solver& solver,
                            double rel_tol = 1e-13, int max_iter = 4000,
                            double early_exit_below = 0.0) {
  Rng rng(0x5eedULL);
  Vec x(static_cast<size_t>(n));
  for (auto& v : x) v = rng.gaussian_complex();
  vec_scale(x, 1.0 / vec_norm(x));
  double est = -1.0;
  for (int it = 0; it < max_iter; ++it) {
    Vec y = x;
    solver.solve_adj(y);  // y <- A^{-*} x
    solver.solve(y);      // y <- (A*A)^{-1} x
    const double nn = vec_norm(y);
    if (!(nn > 0.0) || !std::isfinite(nn)) return 0.0;
    // x is unit, so ||y|| estimates the top eigenvalue of (A*A)^{-1}.
    const double cur = 1.0 / std::sqrt(nn);
    vec_scale(y, 1.0 / nn);
    x = std::move(y);
    const bool converged = est >= 0.0 && std::abs(cur - est) <= rel_tol * cur;
    est = cur;
    if (converged || est < early_exit_below) break;
  }
  // Both est and ||A x|| are upper bounds on sigma_min; keep the tighter one.
  const double rayleigh = vec_norm(apply(x));
  if (std::isfinite(rayleigh) && rayleigh > 0.0) return std::min(rayleigh, est);
  return est;
}

template <class Solver>
double sigma_min_with_solver(const Mat& a, const Solver& solver, double rel_tol = 1e-13,
                             int max_iter = 4000, double early_exit_below = 0.0) {
  return sigma_min_with_apply(
      a.rows(), [&](const Vec& x) { return a.apply(x); }, solver, rel_tol, max_iter,
      early_exit_below);
}

// Dense-path smallest singular value.
double sigma_min_dense(const Mat& a, double rel_tol = 1e-14, int max_iter = 6000);

}  // namespace nuband
