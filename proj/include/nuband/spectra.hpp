#pragma once

#include <string>
#include <vector>

#include "nuband/bandop.hpp"
#include "nuband/eig.hpp"
#include "nuband/matrix.hpp"
#include "nuband/svd.hpp"

namespace nuband {

struct SpectrumEstimate {
  std::vector<cplx> eigenvalues;
  std::vector<double> residuals;  // backward-error estimates, scaled by ||m||
  std::string source;
};

// Dense eigenvalues with backward-error metadata. When exact residuals are
// needed use eigpairs() and measure ||A x - lambda x|| directly.
SpectrumEstimate eigvals_estimate(const Mat& m, double tol = 1e-12, std::string source = {});

// Smallest singular value of (m - z I). Dense LU + inverse iteration.
double sigma_min_shifted(const Mat& m, cplx z, double rel_tol = 1e-13);

// Fast path for band matrices: banded LU (open) or the structured QR
// (periodic). max_iter caps the inverse iteration; grid sweeps lower it since
// deep-interior nodes converge slowly but sit far below any indicator level.
double sigma_min_shifted(const BandMatrix& bm, cplx z, double rel_tol = 1e-11,
                         int max_iter = 4000, double early_exit_below = 0.0);

struct GridSpec {
  double re0 = -1.2, re1 = 1.2, im0 = -1.2, im1 = 1.2;
  int nre = 512, nim = 512;
  std::vector<double> eps_list = {1e-1, 1e-2, 1e-3};
};

struct PseudospectrumGrid {
  GridSpec spec;
  std::vector<double> smin;  // row-major over (im, re)
  bool truncation = false;   // open-boundary sections carry this label

  double at(int i_im, int i_re) const {
    return smin[static_cast<size_t>(i_im) * spec.nre + i_re];
  }
  // Grid nodes where smin <= eps.
  std::vector<cplx> indicator(double eps) const;
};

// sigma_min(T - z) over the grid, tiles evaluated in parallel. Grid values
// are resolved to indicator accuracy (a few percent near the eps levels, an
// upper bound one decade below the finest level); use sigma_min_shifted
// directly when full accuracy is needed at a point.
PseudospectrumGrid pseudospectrum(const BandMatrix& bm, const GridSpec& spec, int threads = 0);

// SVD-based polar factors; cross-checks the analytic band construction.
PolarPair numeric_polar(const Mat& m);

double spectral_radius(const Mat& m);
double operator_norm(const Mat& m);

}  // namespace nuband
