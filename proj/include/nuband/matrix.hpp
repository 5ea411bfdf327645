#pragma once

#include <cassert>
#include <vector>

#include "nuband/types.hpp"

namespace nuband {

using Vec = std::vector<cplx>;

// Dense complex matrix, row-major. Desk-scale sizes only (n <= ~1024).
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }
  cplx operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  const cplx* data() const { return a_.data(); }
  cplx* data() { return a_.data(); }

  Mat adjoint() const;
  Mat transpose() const;
  Mat conj() const;

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(cplx s) const;

  Vec apply(const Vec& x) const;          // A x
  Vec apply_adjoint(const Vec& x) const;  // A* x

  Mat submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;

  double frob_norm() const;
  double max_abs() const;
  // Largest entrywise deviation from another matrix.
  double max_abs_diff(const Mat& o) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

double vec_norm(const Vec& x);
cplx vec_dot(const Vec& x, const Vec& y);  // conj(x) . y
void vec_scale(Vec& x, cplx s);

// --- Dense LU with partial pivoting -----------------------------------------

class DenseLU {
 public:
  // Factor a copy of A. Near-zero pivots are floored (never thrown): this
  // factorization backs inverse iteration, where a singular shift is expected.
  explicit DenseLU(Mat a);

  void solve(Vec& b) const;      // A x = b
  void solve_adj(Vec& b) const;  // A* x = b
  cplx det() const;
  double smallest_pivot() const { return smallest_pivot_; }
  int n() const { return lu_.rows(); }

 private:
  Mat lu_;
  std::vector<int> piv_;
  int swaps_ = 0;
  double smallest_pivot_ = 0.0;
};

Vec solve_dense(const Mat& a, Vec b);

// --- Banded LU with partial pivoting (LAPACK gbtrf-style storage) -----------

class BandedLU {
 public:
  // Factor the band of A (lower bandwidth kl, upper ku); entries of A outside
  // the band are ignored, so callers must pass truly banded matrices.
  BandedLU(const Mat& a, int kl, int ku);

  void solve(Vec& b) const;
  void solve_adj(Vec& b) const;
  int n() const { return n_; }

 private:
  cplx& ab(int i, int j) { return ab_[static_cast<size_t>(j) * ldab_ + i]; }
  cplx ab(int i, int j) const { return ab_[static_cast<size_t>(j) * ldab_ + i]; }

  int n_ = 0, kl_ = 0, ku_ = 0, ldab_ = 0;
  std::vector<cplx> ab_;  // column-major band storage with kl fill rows on top
  std::vector<int> piv_;
};

// --- Solver for banded matrices with wrap-around corner entries -------------
//
// Givens QR specialized to the band-plus-corners sparsity of periodic band
// sections. Unconditionally stable (a low-rank Woodbury correction is not:
// the stripped open section of these non-normal operators is exponentially
// ill-conditioned). The triangular factor lives in compact storage: a sliding
// window per row, the right border columns, and dense bottom rows for the
// corner spikes — so factor and solves stay O(n * bandwidth^2) in both work
// and memory traffic.
class PeriodicBandSolver {
 public:
  // Factors (a - shift I). Entries of a outside the band and the wrap
  // corners are ignored.
  PeriodicBandSolver(const Mat& a, int kl, int ku, cplx shift = 0.0);

  void solve(Vec& b) const;      // A x = b
  void solve_adj(Vec& b) const;  // A* x = b
  int n() const { return n_; }

 private:
  struct Rot {
    int r1, r2;
    double c;
    cplx s;
  };
  int n_ = 0, kl_ = 0, wwin_ = 0, wlo_ = 0;  // window width, border start
  int border_ = 0;
  std::vector<cplx> win_;     // rows 0..wlo_-1, slots j - i + kl
  std::vector<cplx> right_;   // rows 0..wlo_-1, cols wlo_..n-1
  std::vector<cplx> bottom_;  // rows wlo_..n-1, all columns
  std::vector<Rot> rots_;     // left rotations in application order

  cplx& at(int i, int j);
  cplx get(int i, int j) const;
};

}  // namespace nuband
