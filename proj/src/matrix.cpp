#include "nuband/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace nuband {

Mat Mat::adjoint() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Mat Mat::conj() const {
  Mat r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  assert(cols_ == o.rows_);
  Mat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const cplx aik = (*this)(i, k);
      if (aik == cplx(0.0)) continue;
      const cplx* brow = &o.a_[static_cast<size_t>(k) * o.cols_];
      cplx* rrow = &r.a_[static_cast<size_t>(i) * r.cols_];
      for (int j = 0; j < o.cols_; ++j) rrow[j] += aik * brow[j];
    }
  }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Mat Mat::operator*(cplx s) const {
  Mat r = *this;
  for (auto& v : r.a_) v *= s;
  return r;
}

Vec Mat::apply(const Vec& x) const {
  assert(static_cast<int>(x.size()) == cols_);
  Vec y(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) {
    cplx acc = 0.0;
    const cplx* row = &a_[static_cast<size_t>(i) * cols_];
    for (int j = 0; j < cols_; ++j) acc += row[j] * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = acc;
  }
  return y;
}

Vec Mat::apply_adjoint(const Vec& x) const {
  assert(static_cast<int>(x.size()) == rows_);
  Vec y(static_cast<size_t>(cols_));
  for (int i = 0; i < rows_; ++i) {
    const cplx xi = x[static_cast<size_t>(i)];
    const cplx* row = &a_[static_cast<size_t>(i) * cols_];
    for (int j = 0; j < cols_; ++j) y[static_cast<size_t>(j)] += std::conj(row[j]) * xi;
  }
  return y;
}

Mat Mat::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
  Mat r(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = (*this)(rows[i], cols[j]);
  return r;
}

double Mat::frob_norm() const {
  double s = 0.0;
  for (const auto& v : a_) s += abs2(v);
  return std::sqrt(s);
}

double Mat::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double Mat::max_abs_diff(const Mat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  double m = 0.0;
  for (size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
  return m;
}

double vec_norm(const Vec& x) {
  double s = 0.0;
  for (const auto& v : x) s += abs2(v);
  return std::sqrt(s);
}

cplx vec_dot(const Vec& x, const Vec& y) {
  assert(x.size() == y.size());
  cplx s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

void vec_scale(Vec& x, cplx s) {
  for (auto& v : x) v *= s;
}

// --- DenseLU -----------------------------------------------------------------

DenseLU::DenseLU(Mat a) : lu_(std::move(a)), piv_(static_cast<size_t>(lu_.rows())) {
  const int n = lu_.rows();
  assert(lu_.cols() == n);
  smallest_pivot_ = lu_.max_abs();
  // Absolute floor keeps inverse iteration finite when the shift is (near) an
  // exact singular point.
  const double floor = std::max(lu_.max_abs(), 1.0) * 1e-300;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    piv_[static_cast<size_t>(k)] = p;
    if (p != k) {
      ++swaps_;
      for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
    }
    cplx pivot = lu_(k, k);
    if (std::abs(pivot) < floor) {
      pivot = cplx(floor, 0.0);
      lu_(k, k) = pivot;
    }
    smallest_pivot_ = std::min(smallest_pivot_, std::abs(pivot));
    for (int i = k + 1; i < n; ++i) {
      const cplx l = lu_(i, k) / pivot;
      lu_(i, k) = l;
      if (l == cplx(0.0)) continue;
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

void DenseLU::solve(Vec& b) const {
  const int n = lu_.rows();
  for (int k = 0; k < n; ++k) {
    const int p = piv_[static_cast<size_t>(k)];
    if (p != k) std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(p)]);
  }
  for (int i = 1; i < n; ++i) {
    cplx acc = b[static_cast<size_t>(i)];
    for (int j = 0; j < i; ++j) acc -= lu_(i, j) * b[static_cast<size_t>(j)];
    b[static_cast<size_t>(i)] = acc;
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx acc = b[static_cast<size_t>(i)];
    for (int j = i + 1; j < n; ++j) acc -= lu_(i, j) * b[static_cast<size_t>(j)];
    b[static_cast<size_t>(i)] = acc / lu_(i, i);
  }
}

void DenseLU::solve_adj(Vec& b) const {
  // A = P^T L U  =>  A* = U* L* P, solve U* y = b, L* z = y, x = P^T z.
  const int n = lu_.rows();
  for (int i = 0; i < n; ++i) {
    cplx acc = b[static_cast<size_t>(i)];
    for (int j = 0; j < i; ++j) acc -= std::conj(lu_(j, i)) * b[static_cast<size_t>(j)];
    b[static_cast<size_t>(i)] = acc / std::conj(lu_(i, i));
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx acc = b[static_cast<size_t>(i)];
    for (int j = i + 1; j < n; ++j) acc -= std::conj(lu_(j, i)) * b[static_cast<size_t>(j)];
    b[static_cast<size_t>(i)] = acc;
  }
  for (int k = n - 1; k >= 0; --k) {
    const int p = piv_[static_cast<size_t>(k)];
    if (p != k) std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(p)]);
  }
}

cplx DenseLU::det() const {
  cplx d = (swaps_ % 2 == 0) ? cplx(1.0) : cplx(-1.0);
  for (int i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
  return d;
}

Vec solve_dense(const Mat& a, Vec b) {
  DenseLU lu(a);
  lu.solve(b);
  return b;
}

// --- BandedLU ----------------------------------------------------------------

BandedLU::BandedLU(const Mat& a, int kl, int ku)
    : n_(a.rows()), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
      ab_(static_cast<size_t>(ldab_) * n_), piv_(static_cast<size_t>(n_)) {
  assert(a.cols() == n_);
  // Band entry A(i,j) lives at ab(kl + ku + i - j, j); the top kl rows are fill.
  for (int j = 0; j < n_; ++j) {
    const int ilo = std::max(0, j - ku_);
    const int ihi = std::min(n_ - 1, j + kl_);
    for (int i = ilo; i <= ihi; ++i) ab(kl_ + ku_ + i - j, j) = a(i, j);
  }
  double amax = 0.0;
  for (const auto& v : ab_) amax = std::max(amax, std::abs(v));
  const double floor = std::max(amax, 1.0) * 1e-300;

  const int kv = kl_ + ku_;  // effective upper bandwidth after pivoting
  for (int j = 0; j < n_; ++j) {
    // Pivot among rows j .. j+kl within column j.
    const int ihi = std::min(n_ - 1, j + kl_);
    int p = j;
    double best = std::abs(ab(kv + 0, j));
    for (int i = j + 1; i <= ihi; ++i) {
      const double v = std::abs(ab(kv + i - j, j));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    piv_[static_cast<size_t>(j)] = p;
    if (p != j) {
      const int jhi = std::min(n_ - 1, j + kv);
      for (int c = j; c <= jhi; ++c) std::swap(ab(kv + j - c, c), ab(kv + p - c, c));
    }
    cplx pivot = ab(kv, j);
    if (std::abs(pivot) < floor) {
      pivot = cplx(floor, 0.0);
      ab(kv, j) = pivot;
    }
    for (int i = j + 1; i <= ihi; ++i) {
      const cplx l = ab(kv + i - j, j) / pivot;
      ab(kv + i - j, j) = l;
      if (l == cplx(0.0)) continue;
      const int jhi = std::min(n_ - 1, j + kv);
      for (int c = j + 1; c <= jhi; ++c) ab(kv + i - c, c) -= l * ab(kv + j - c, c);
    }
  }
}

void BandedLU::solve(Vec& b) const {
  const int kv = kl_ + ku_;
  for (int j = 0; j < n_; ++j) {
    const int p = piv_[static_cast<size_t>(j)];
    if (p != j) std::swap(b[static_cast<size_t>(j)], b[static_cast<size_t>(p)]);
    const int ihi = std::min(n_ - 1, j + kl_);
    const cplx bj = b[static_cast<size_t>(j)];
    for (int i = j + 1; i <= ihi; ++i) b[static_cast<size_t>(i)] -= ab(kv + i - j, j) * bj;
  }
  for (int i = n_ - 1; i >= 0; --i) {
    const int jhi = std::min(n_ - 1, i + kv);
    cplx acc = b[static_cast<size_t>(i)];
    for (int j = i + 1; j <= jhi; ++j) acc -= ab(kv + i - j, j) * b[static_cast<size_t>(j)];
    b[static_cast<size_t>(i)] = acc / ab(kv + 0, i);
  }
}

void BandedLU::solve_adj(Vec& b) const {
  // Same pivoted factorization used for A* x = b: U* y = b then L* z = y, then
  // undo the row swaps in reverse.
  const int kv = kl_ + ku_;
  for (int i = 0; i < n_; ++i) {
    cplx acc = b[static_cast<size_t>(i)];
    const int jlo = std::max(0, i - kv);
    for (int j = jlo; j < i; ++j) acc -= std::conj(ab(kv + j - i, i)) * b[static_cast<size_t>(j)];
    b[static_cast<size_t>(i)] = acc / std::conj(ab(kv + 0, i));
  }
  for (int j = n_ - 1; j >= 0; --j) {
    const int ihi = std::min(n_ - 1, j + kl_);
    cplx acc = b[static_cast<size_t>(j)];
    for (int i = j + 1; i <= ihi; ++i) acc -= std::conj(ab(kv + i - j, j)) * b[static_cast<size_t>(i)];
    b[static_cast<size_t>(j)] = acc;
    const int p = piv_[static_cast<size_t>(j)];
    if (p != j) std::swap(b[static_cast<size_t>(j)], b[static_cast<size_t>(p)]);
  }
}

// --- PeriodicBandSolver -------------------------------------------------------

namespace {
// Unitary rotation [c, s; -conj(s), c] with c real sending (f, g) to (r, 0).
std::pair<double, cplx> givens_cs(cplx f, cplx g) {
  if (g == cplx(0.0)) return {1.0, cplx(0.0)};
  if (f == cplx(0.0)) return {0.0, std::conj(g) / std::abs(g)};
  const double af = std::abs(f);
  const double d = std::sqrt(abs2(f) + abs2(g));
  return {af / d, (f / af) * std::conj(g) / d};
}
}  // namespace

cplx& PeriodicBandSolver::at(int i, int j) {
  if (i >= wlo_) return bottom_[static_cast<size_t>(i - wlo_) * n_ + j];
  if (j >= wlo_) return right_[static_cast<size_t>(i) * border_ + (j - wlo_)];
  return win_[static_cast<size_t>(i) * wwin_ + (j - i + kl_)];
}

cplx PeriodicBandSolver::get(int i, int j) const {
  if (i >= wlo_) return bottom_[static_cast<size_t>(i - wlo_) * n_ + j];
  if (j >= wlo_) return right_[static_cast<size_t>(i) * border_ + (j - wlo_)];
  const int slot = j - i + kl_;
  if (slot < 0 || slot >= wwin_) return 0.0;
  return win_[static_cast<size_t>(i) * wwin_ + slot];
}

PeriodicBandSolver::PeriodicBandSolver(const Mat& a, int kl, int ku, cplx shift)
    : n_(a.rows()), kl_(std::max(kl, ku)) {
  const int band = kl_;
  // Rows above the border keep their nonzeros inside the sliding window
  // [i - band, i + 2 band + 1] plus the right border columns; the bottom
  // border rows (corner spikes) are stored densely.
  border_ = std::min(n_, 2 * band + 2);
  wlo_ = n_ - border_;
  wwin_ = std::min(n_, 3 * band + 2);  // slots j - i + band
  win_.assign(static_cast<size_t>(std::max(wlo_, 0)) * wwin_, cplx(0.0));
  right_.assign(static_cast<size_t>(std::max(wlo_, 0)) * border_, cplx(0.0));
  bottom_.assign(static_cast<size_t>(border_) * n_, cplx(0.0));
  for (int i = 0; i < n_; ++i) {
    if (i >= wlo_) {
      // Bottom border rows hold the corner spikes: stored densely.
      for (int j = 0; j < n_; ++j) {
        const bool in_band = std::abs(i - j) <= band;
        const bool corner = i - j > band && j < band;
        cplx v = (in_band || corner) ? a(i, j) : cplx(0.0);
        if (i == j) v -= shift;
        at(i, j) = v;
      }
      continue;
    }
    // Band entries within the window.
    for (int j = std::max(0, i - band); j <= std::min(wlo_ - 1, i + band); ++j) {
      cplx v = a(i, j);
      if (i == j) v -= shift;
      at(i, j) = v;
    }
    // Band entries reaching into the right border, plus top-right corners.
    for (int j = std::max(wlo_, i - band); j < n_; ++j) {
      const bool in_band = std::abs(i - j) <= band;
      const bool corner = j - i > band && i < band;
      if (in_band || corner) at(i, j) = a(i, j);
    }
  }

  const int lo_border = wlo_;
  rots_.reserve(static_cast<size_t>(n_) * static_cast<size_t>(band + 2));
  for (int j = 0; j + 1 < n_; ++j) {
    const int win_hi = std::min(lo_border - 1, j + 2 * band + 1);
    for (int i = j + 1; i < n_; ++i) {
      if (i > j + band && i < lo_border) continue;  // structural zeros
      const cplx below = get(i, j);
      if (below == cplx(0.0)) continue;
      auto [c, s] = givens_cs(get(j, j), below);
      rots_.push_back({j, i, c, s});
      auto rotate_col = [&](int col) {
        cplx& e1 = at(j, col);
        cplx& e2 = at(i, col);
        const cplx t1 = e1, t2 = e2;
        e1 = c * t1 + s * t2;
        e2 = -std::conj(s) * t1 + c * t2;
      };
      for (int col = j; col <= win_hi; ++col) rotate_col(col);
      for (int col = std::max(win_hi + 1, lo_border); col < n_; ++col) rotate_col(col);
      at(i, j) = 0.0;
    }
  }
  // Floor exactly-zero pivots so inverse iteration stays finite on singular
  // shifts.
  double rmax = 0.0;
  for (int i = 0; i < n_; ++i) rmax = std::max(rmax, std::abs(get(i, i)));
  const double floor = std::max(rmax, 1.0) * 1e-300;
  for (int i = 0; i < n_; ++i)
    if (std::abs(get(i, i)) < floor) at(i, i) = floor;
}

void PeriodicBandSolver::solve(Vec& b) const {
  // A = Q R with Q* = (product of stored rotations): c = Q* b, then R x = c.
  for (const Rot& g : rots_) {
    const cplx t1 = b[static_cast<size_t>(g.r1)], t2 = b[static_cast<size_t>(g.r2)];
    b[static_cast<size_t>(g.r1)] = g.c * t1 + g.s * t2;
    b[static_cast<size_t>(g.r2)] = -std::conj(g.s) * t1 + g.c * t2;
  }
  const int lo_border = wlo_;
  for (int i = n_ - 1; i >= 0; --i) {
    cplx acc = b[static_cast<size_t>(i)];
    const int win_hi = std::min(lo_border - 1, i + 2 * kl_ + 1);
    for (int k = i + 1; k <= win_hi; ++k) acc -= get(i, k) * b[static_cast<size_t>(k)];
    for (int k = std::max({win_hi + 1, lo_border, i + 1}); k < n_; ++k)
      acc -= get(i, k) * b[static_cast<size_t>(k)];
    b[static_cast<size_t>(i)] = acc / get(i, i);
  }
}

void PeriodicBandSolver::solve_adj(Vec& b) const {
  // A* x = b: solve R* y = b (forward), then x = Q y (adjoint rotations in
  // reverse order).
  const int lo_border = wlo_;
  for (int i = 0; i < n_; ++i) {
    cplx acc = b[static_cast<size_t>(i)];
    const int klo = std::max(0, i - 2 * kl_ - 1);
    for (int k = klo; k < i; ++k) acc -= std::conj(get(k, i)) * b[static_cast<size_t>(k)];
    if (i >= lo_border) {
      for (int k = 0; k < klo; ++k) acc -= std::conj(get(k, i)) * b[static_cast<size_t>(k)];
    }
    b[static_cast<size_t>(i)] = acc / std::conj(get(i, i));
  }
  for (auto it = rots_.rbegin(); it != rots_.rend(); ++it) {
    const cplx t1 = b[static_cast<size_t>(it->r1)], t2 = b[static_cast<size_t>(it->r2)];
    b[static_cast<size_t>(it->r1)] = it->c * t1 - it->s * t2;
    b[static_cast<size_t>(it->r2)] = std::conj(it->s) * t1 + it->c * t2;
  }
}

}  // namespace nuband
