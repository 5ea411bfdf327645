#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nuband/bandop.hpp"
#include "nuband/coin.hpp"
#include "nuband/types.hpp"
#include "vendor_json_fwd.hpp"

namespace nuband {

// Open arc of the unit circle contained in the resolvent set of the unitary
// factor: half-width theta around the bisector direction e^{i rotation}.
struct GapArc {
  double theta;
  double rotation;
};

// Membership in the union over tau > 0 of B_tau(d) and B_{g tau}(g d) with
// d^2 = tau^2 - 2 tau cos(theta) + 1 (distance from tau to the gapped circle
// arc). Both disc conditions are linear in tau:
//   2 tau (cos(theta) - Re z) < 1 - |z|^2
//   2 tau (g cos(theta) - Re z) < (g^2 - |z|^2)/g
// so feasibility reduces to a sign analysis. Requires 0 < theta < pi and
// 0 < g < 1. Open set: boundary points are non-members.
bool member_form(double theta, double g, cplx z);

// Rotated-center variant: centers tau e^{i alpha}, 0 <= alpha < theta, with
// d^2 = tau^2 - 2 tau cos(theta - alpha) + 1. Contained in the alpha = 0 set.
bool member_form_rotated(double theta, double g, double alpha, cplx z);

// Boundary curve of the bounded component: y^2 as a function of
// x in [0, (1+g) cos(theta)), theta < pi/2.
double cubic_boundary_y2(double theta, double g, double x);
// Parametrization of the same curve by the disc parameter tau >= 1/(2cos(theta)).
double cubic_x_of_tau(double theta, double g, double tau);

// Membership in B_0(g) together with the closed wedge region spanned by the
// two lines through g e^{+-i theta} and g/cos(theta): polar condition
// |z| cos(theta - |arg z|) < g on |arg z| < theta. Valid for all
// theta in (0, pi); for theta >= pi/2 the wedge is unbounded.
bool member_delta(double theta, double g, cplx z);

// Membership in (B_{-e^{i theta} rho}(rho+rho2) ∩ B_{-e^{-i theta} rho}(rho+rho2)
//                ∩ {Re z > rho2 cos(theta)}) ∪ B_0(rho2).
bool member_gamma(double rho, double rho2, double theta, cplx z);

// Brute-force certificate for a product of normal operators: z is certified
// outside the spectrum of AB if some grid point tau away from sigma(A)
// satisfies |z - tau b| < |b| dist(tau, sigma(A)) for every b in sigma(B).
// arc_correction is subtracted from sampled distances to account for the
// chord-vs-arc sampling error of sigma(A).
bool member_product(const std::vector<cplx>& sigma_a, const std::vector<cplx>& sigma_b, cplx z,
                    const std::vector<cplx>& tau_grid, double arc_correction = 0.0);

// Same predicate with the tau -> dist(tau, sigma(A)) table precomputed once;
// use this for grid sweeps.
struct ProductOracle {
  ProductOracle(const std::vector<cplx>& sigma_a, std::vector<cplx> sigma_b,
                std::vector<cplx> tau_grid, double arc_correction = 0.0);
  bool contains(cplx z) const;
  std::vector<cplx> sigma_b;
  std::vector<cplx> tau;
  std::vector<double> dist;  // corrected distance, <= 0 entries skipped
};

// Certified resolvent region with a total membership predicate. All regions
// are open; points on the boundary are non-members.
struct Region {
  enum class Kind { Disc, HalfPlane, FormSet, DeltaSet, GammaSet, Annulus, Product };
  Kind kind = Kind::Disc;
  double rotation = 0.0;  // bisector direction; membership tested on e^{-i rot} z

  cplx center = 0.0;      // Disc
  double radius = 0.0;    // Disc
  double gamma = 0.0;     // HalfPlane: Re z > gamma cos(theta)
  double theta = 0.0;     // HalfPlane/FormSet/DeltaSet/GammaSet
  double g = 0.0;         // FormSet/DeltaSet
  double rho = 0.0, rho2 = 0.0;  // GammaSet
  double inner = 0.0;     // Annulus: inner < |z| < outer
  double outer = 0.0;     // +inf encoded as 0 meaning unbounded
  std::vector<cplx> sigma_a, sigma_b, tau_grid;  // Product
  std::vector<double> tau_dist;                  // precomputed by make_product
  double arc_correction = 0.0;

  std::string activated_by;  // the inequality that produced this region

  bool contains(cplx z) const;
  // True when z together with an 8-point stencil of radius margin lies inside.
  bool contains_interior(cplx z, double margin) const;
  // Boundary polylines for plotting (within |Re|,|Im| <= box).
  std::vector<std::vector<cplx>> boundary(double box = 1.35, int samples = 512) const;
  nlohmann::json to_json() const;
};

Region make_disc(cplx center, double radius);
Region make_half_plane(double gamma, double theta, double rotation = 0.0);
Region make_form_set(double theta, double g, double rotation = 0.0);
Region make_delta_set(double theta, double g, double rotation = 0.0);
Region make_gamma_set(double rho, double rho2, double theta, double rotation = 0.0);
Region make_annulus(double inner, double outer /* <=0: unbounded */);
Region make_product(std::vector<cplx> sigma_a, std::vector<cplx> sigma_b,
                    std::vector<cplx> tau_grid, double arc_correction);

// Composite certificate for the operator family described by the embedding,
// the phase support half-width and the block data of the unitary factor.
struct Certificate {
  double g = 0.0;
  double rV = 0.0;
  bool gap_ok = false;
  bool splits = false;  // two opposite gap regions each cover their radial segment
  std::vector<Region> regions;
  std::vector<GapArc> smeared_gaps;
  nlohmann::json to_json() const;
};

// Gap arcs of sigma(V) may be passed explicitly (exact for the closed-form
// families); otherwise they are detected from the symbol of the unitary
// factor's coin with a conservative guard band.
Certificate certified_resolvent(const UnitaryEmbedding& emb, double eps_support,
                                const TridiagonalBlockData& bd,
                                const std::vector<GapArc>* analytic_arcs = nullptr);

}  // namespace nuband
