#include "nuband/spectra.hpp"

#include <cmath>
#include <limits>

#include "nuband/parallel.hpp"

namespace nuband {

SpectrumEstimate eigvals_estimate(const Mat& m, double tol, std::string source) {
  if (m.rows() > 1024) throw std::invalid_argument("eigvals_estimate: dimension above desk scale");
  SpectrumEstimate out;
  out.eigenvalues = eigvals(m);
  // QR with balancing is backward stable; n * eps * ||m|| is the structural
  // per-eigenvalue backward-error scale.
  const double est = m.rows() * std::numeric_limits<double>::epsilon() * m.frob_norm();
  out.residuals.assign(out.eigenvalues.size(), est);
  out.source = std::move(source);
  if (est > tol * std::max(1.0, m.frob_norm()))
    throw NumericError("eigvals_estimate: requested tolerance below attainable backward error");
  return out;
}

namespace {
Mat shifted_copy(const Mat& m, cplx z) {
  Mat s = m;
  for (int i = 0; i < s.rows(); ++i) s(i, i) -= z;
  return s;
}
}  // namespace

double sigma_min_shifted(const Mat& m, cplx z, double rel_tol) {
  const Mat s = shifted_copy(m, z);
  DenseLU lu(s);
  return sigma_min_with_solver(s, lu, rel_tol);
}

double sigma_min_shifted(const BandMatrix& bm, cplx z, double rel_tol, int max_iter,
                         double early_exit_below) {
  if (bm.bc == Boundary::Open) {
    const Mat s = shifted_copy(bm.m, z);
    BandedLU lu(s, 2, 2);
    return sigma_min_with_solver(s, lu, rel_tol, max_iter, early_exit_below);
  }
  // No dense copies: the structured QR factors (A - z I) from the band
  // directly, and the residual apply shifts on the fly.
  PeriodicBandSolver solver(bm.m, 2, 2, z);
  auto apply = [&](const Vec& x) {
    Vec y = bm.m.apply(x);
    for (size_t i = 0; i < y.size(); ++i) y[i] -= z * x[i];
    return y;
  };
  return sigma_min_with_apply(bm.dim, apply, solver, rel_tol, max_iter, early_exit_below);
}

std::vector<cplx> PseudospectrumGrid::indicator(double eps) const {
  std::vector<cplx> pts;
  for (int i = 0; i < spec.nim; ++i) {
    const double y = spec.im0 + (spec.im1 - spec.im0) * (spec.nim == 1 ? 0.5 : double(i) / (spec.nim - 1));
    for (int j = 0; j < spec.nre; ++j) {
      const double x = spec.re0 + (spec.re1 - spec.re0) * (spec.nre == 1 ? 0.5 : double(j) / (spec.nre - 1));
      if (at(i, j) <= eps) pts.emplace_back(x, y);
    }
  }
  return pts;
}

PseudospectrumGrid pseudospectrum(const BandMatrix& bm, const GridSpec& spec, int threads) {
  if (spec.nre < 1 || spec.nim < 1) throw std::invalid_argument("pseudospectrum: empty grid");
  PseudospectrumGrid grid;
  grid.spec = spec;
  grid.truncation = bm.bc == Boundary::Open;
  grid.smin.assign(static_cast<size_t>(spec.nre) * spec.nim, 0.0);
  // Resolve values down to one decade below the finest indicator level; far
  // below that the stored number is an upper bound.
  double floor_level = 1e-4;
  for (const double e : spec.eps_list) floor_level = std::min(floor_level, e / 10.0);
  parallel_for(
      static_cast<size_t>(spec.nim),
      [&](size_t i) {
        const double y =
            spec.im0 + (spec.im1 - spec.im0) * (spec.nim == 1 ? 0.5 : double(i) / (spec.nim - 1));
        for (int j = 0; j < spec.nre; ++j) {
          const double x = spec.re0 +
                           (spec.re1 - spec.re0) * (spec.nre == 1 ? 0.5 : double(j) / (spec.nre - 1));
          grid.smin[i * spec.nre + j] = sigma_min_shifted(bm, cplx(x, y), 1e-4, 60, floor_level);
        }
      },
      threads);
  return grid;
}

PolarPair numeric_polar(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("numeric_polar: square input expected");
  return polar_decompose(m);
}

double spectral_radius(const Mat& m) { return spectral_radius_of(m); }
double operator_norm(const Mat& m) { return operator_norm_of(m); }

}  // namespace nuband
