#pragma once

#include <utility>
#include <vector>

#include "nuband/matrix.hpp"

namespace nuband {

struct EigOptions {
  bool balance = true;
  // QR steps allowed per matrix, as a multiple of the dimension.
  int max_steps_per_dim = 30;
};

// All eigenvalues of a general complex matrix via balancing, Householder
// reduction to upper Hessenberg form and implicit-shift QR iteration with
// Wilkinson shifts. Throws NumericError on non-convergence.
std::vector<cplx> eigvals(Mat a, const EigOptions& opt = {});

// Eigenvalues of a 2x2 matrix in closed form.
std::pair<cplx, cplx> eig2(cplx a, cplx b, cplx c, cplx d);

// Eigenpairs via eigvals + one inverse-iteration refinement per eigenvalue.
// Intended for moderate n (each vector costs a dense LU).
std::vector<std::pair<cplx, Vec>> eigpairs(const Mat& a, const EigOptions& opt = {});

double spectral_radius_of(const Mat& a);

}  // namespace nuband
