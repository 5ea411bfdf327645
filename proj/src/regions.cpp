#include "nuband/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nuband/symbol.hpp"

namespace nuband {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Feasibility of { tau > 0 : a1 tau < b1 and a2 tau < b2 } by sign analysis.
bool feasible_tau(double a1, double b1, double a2, double b2) {
  double lower = 0.0, upper = kInf;
  for (const auto& [a, b] : {std::pair{a1, b1}, std::pair{a2, b2}}) {
    if (a > 0.0) {
      upper = std::min(upper, b / a);
    } else if (a == 0.0) {
      if (b <= 0.0) return false;
    } else {
      lower = std::max(lower, b / a);
    }
  }
  return upper > lower;
}
}  // namespace

bool member_form_rotated(double theta, double g, double alpha, cplx z) {
  if (!(theta > 0.0 && theta < pi)) throw std::invalid_argument("member_form: theta in (0, pi)");
  if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("member_form: g in (0, 1)");
  if (!(alpha >= 0.0 && alpha < theta))
    throw std::invalid_argument("member_form: alpha in [0, theta)");
  const cplx w = std::polar(1.0, -alpha) * z;
  const double c = std::cos(theta - alpha);
  const double zz = abs2(w);
  const double a1 = 2.0 * (c - w.real());
  const double b1 = 1.0 - zz;
  const double a2 = 2.0 * (g * c - w.real());
  const double b2 = (g * g - zz) / g;
  return feasible_tau(a1, b1, a2, b2);
}

bool member_form(double theta, double g, cplx z) { return member_form_rotated(theta, g, 0.0, z); }

double cubic_x_of_tau(double theta, double g, double tau) {
  return -(1.0 + g) / (2.0 * tau) + (1.0 + g) * std::cos(theta);
}

double cubic_boundary_y2(double theta, double g, double x) {
  if (!(theta > 0.0 && theta < pi / 2))
    throw std::invalid_argument("cubic_boundary_y2: theta in (0, pi/2)");
  const double c = std::cos(theta);
  if (!(x >= 0.0 && x < (1.0 + g) * c))
    throw std::invalid_argument("cubic_boundary_y2: x outside [0, (1+g) cos(theta))");
  return x * (x * x - x * (1.0 + g) * c + g) / ((1.0 + g) * c - x);
}

bool member_delta(double theta, double g, cplx z) {
  if (!(theta > 0.0 && theta < pi)) throw std::invalid_argument("member_delta: theta in (0, pi)");
  if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("member_delta: g in (0, 1)");
  const double rho = std::abs(z);
  if (rho < g) return true;
  const double beta = std::abs(std::arg(z));
  if (!(beta < theta)) return false;
  // Polar form of the line through g e^{i theta} and g / cos(theta); for
  // theta - beta >= pi/2 the left side is negative and every radius passes.
  return rho * std::cos(theta - beta) < g;
}

bool member_gamma(double rho, double rho2, double theta, cplx z) {
  if (!(rho > 0.0 && rho2 > 0.0)) throw std::invalid_argument("member_gamma: radii positive");
  if (!(theta > 0.0 && theta < pi)) throw std::invalid_argument("member_gamma: theta in (0, pi)");
  if (std::abs(z) < rho2) return true;
  const cplx c1 = -std::polar(rho, theta), c2 = -std::polar(rho, -theta);
  return std::abs(z - c1) < rho + rho2 && std::abs(z - c2) < rho + rho2 &&
         z.real() > rho2 * std::cos(theta);
}

ProductOracle::ProductOracle(const std::vector<cplx>& sigma_a, std::vector<cplx> sb,
                             std::vector<cplx> tg, double arc_correction)
    : sigma_b(std::move(sb)), tau(std::move(tg)) {
  if (sigma_a.empty() || sigma_b.empty() || tau.empty())
    throw std::invalid_argument("member_product: empty sample set");
  dist.resize(tau.size());
  for (size_t k = 0; k < tau.size(); ++k) {
    double d = kInf;
    for (const cplx a : sigma_a) d = std::min(d, std::abs(tau[k] - a));
    dist[k] = d - arc_correction;
  }
}

bool ProductOracle::contains(cplx z) const {
  for (size_t k = 0; k < tau.size(); ++k) {
    const double d = dist[k];
    if (d <= 0.0) continue;
    bool ok = true;
    for (const cplx b : sigma_b) {
      if (!(std::abs(z - tau[k] * b) < std::abs(b) * d)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool member_product(const std::vector<cplx>& sigma_a, const std::vector<cplx>& sigma_b, cplx z,
                    const std::vector<cplx>& tau_grid, double arc_correction) {
  return ProductOracle(sigma_a, sigma_b, tau_grid, arc_correction).contains(z);
}

bool Region::contains(cplx z) const {
  const cplx w = rotation == 0.0 ? z : std::polar(1.0, -rotation) * z;
  switch (kind) {
    case Kind::Disc:
      return std::abs(w - center) < radius;
    case Kind::HalfPlane:
      return w.real() > gamma * std::cos(theta);
    case Kind::FormSet:
      return member_form(theta, g, w);
    case Kind::DeltaSet:
      return member_delta(theta, g, w);
    case Kind::GammaSet:
      return member_gamma(rho, rho2, theta, w);
    case Kind::Annulus:
      return std::abs(w) > inner && (outer <= 0.0 || std::abs(w) < outer);
    case Kind::Product: {
      for (size_t k = 0; k < tau_grid.size(); ++k) {
        const double d = tau_dist[k];
        if (d <= 0.0) continue;
        bool ok = true;
        for (const cplx b : sigma_b) {
          if (!(std::abs(w - tau_grid[k] * b) < std::abs(b) * d)) {
            ok = false;
            break;
          }
        }
        if (ok) return true;
      }
      return false;
    }
  }
  return false;
}

bool Region::contains_interior(cplx z, double margin) const {
  if (!contains(z)) return false;
  for (int k = 0; k < 8; ++k) {
    if (!contains(z + std::polar(margin, k * pi / 4.0))) return false;
  }
  return true;
}

namespace {
std::vector<cplx> circle_points(cplx c, double r, int n) {
  std::vector<cplx> pts;
  pts.reserve(static_cast<size_t>(n + 1));
  for (int i = 0; i <= n; ++i) pts.push_back(c + std::polar(r, two_pi * i / n));
  return pts;
}
void rotate_polyline(std::vector<cplx>& pts, double rot) {
  if (rot == 0.0) return;
  const cplx ph = std::polar(1.0, rot);
  for (auto& p : pts) p *= ph;
}
}  // namespace

std::vector<std::vector<cplx>> Region::boundary(double box, int samples) const {
  std::vector<std::vector<cplx>> out;
  auto add = [&](std::vector<cplx> pts) {
    rotate_polyline(pts, rotation);
    if (!pts.empty()) out.push_back(std::move(pts));
  };
  switch (kind) {
    case Kind::Disc:
      add(circle_points(center, radius, samples));
      break;
    case Kind::HalfPlane: {
      const double c = gamma * std::cos(theta);
      add({cplx(c, -box), cplx(c, box)});
      break;
    }
    case Kind::FormSet: {
      add(circle_points(0.0, g, samples));
      if (theta < pi / 2) {
        const double xmax = (1.0 + g) * std::cos(theta);
        std::vector<cplx> up, down;
        for (int i = 0; i < samples; ++i) {
          const double x = xmax * i / samples;
          const double y2 = cubic_boundary_y2(theta, g, x);
          if (y2 < 0.0) continue;
          const double y = std::sqrt(y2);
          if (y > box) break;
          up.emplace_back(x, y);
          down.emplace_back(x, -y);
        }
        add(std::move(up));
        add(std::move(down));
        add({cplx(std::cos(theta), -box), cplx(std::cos(theta), box)});
      } else {
        add({cplx(g * std::cos(theta), -box), cplx(g * std::cos(theta), box)});
      }
      break;
    }
    case Kind::DeltaSet: {
      add(circle_points(0.0, g, samples));
      const cplx v1 = std::polar(g, theta), v2 = std::polar(g, -theta);
      if (theta < pi / 2) {
        const cplx apex(g / std::cos(theta), 0.0);
        add({v1, apex});
        add({v2, apex});
      } else {
        // Unbounded wedge: draw the two lines out to the box.
        const cplx dir1 = std::polar(1.0, theta - pi / 2), dir2 = std::polar(1.0, -(theta - pi / 2));
        add({v1, v1 + 2.0 * box * dir1});
        add({v2, v2 + 2.0 * box * dir2});
      }
      break;
    }
    case Kind::GammaSet: {
      add(circle_points(0.0, rho2, samples));
      add(circle_points(-std::polar(rho, theta), rho + rho2, samples));
      add(circle_points(-std::polar(rho, -theta), rho + rho2, samples));
      add({cplx(rho2 * std::cos(theta), -box), cplx(rho2 * std::cos(theta), box)});
      break;
    }
    case Kind::Annulus: {
      add(circle_points(0.0, inner, samples));
      if (outer > 0.0) add(circle_points(0.0, outer, samples));
      break;
    }
    case Kind::Product:
      break;
  }
  return out;
}

nlohmann::json Region::to_json() const {
  const char* names[] = {"disc", "half_plane", "form_set", "delta_set", "gamma_set", "annulus",
                         "product"};
  nlohmann::json j{{"type", names[static_cast<int>(kind)]}, {"rotation", rotation}};
  switch (kind) {
    case Kind::Disc:
      j["center"] = {center.real(), center.imag()};
      j["radius"] = radius;
      break;
    case Kind::HalfPlane:
      j["gamma"] = gamma;
      j["theta"] = theta;
      break;
    case Kind::FormSet:
    case Kind::DeltaSet:
      j["theta"] = theta;
      j["g"] = g;
      break;
    case Kind::GammaSet:
      j["rho"] = rho;
      j["rho2"] = rho2;
      j["theta"] = theta;
      break;
    case Kind::Annulus:
      j["inner"] = inner;
      if (outer > 0.0) j["outer"] = outer;
      break;
    case Kind::Product:
      j["sigma_a_samples"] = sigma_a.size();
      j["sigma_b_samples"] = sigma_b.size();
      break;
  }
  if (!activated_by.empty()) j["activated_by"] = activated_by;
  return j;
}

Region make_disc(cplx center, double radius) {
  Region r;
  r.kind = Region::Kind::Disc;
  r.center = center;
  r.radius = radius;
  return r;
}
Region make_half_plane(double gamma, double theta, double rotation) {
  Region r;
  r.kind = Region::Kind::HalfPlane;
  r.gamma = gamma;
  r.theta = theta;
  r.rotation = rotation;
  return r;
}
Region make_form_set(double theta, double g, double rotation) {
  Region r;
  r.kind = Region::Kind::FormSet;
  r.theta = theta;
  r.g = g;
  r.rotation = rotation;
  return r;
}
Region make_delta_set(double theta, double g, double rotation) {
  Region r;
  r.kind = Region::Kind::DeltaSet;
  r.theta = theta;
  r.g = g;
  r.rotation = rotation;
  return r;
}
Region make_gamma_set(double rho, double rho2, double theta, double rotation) {
  Region r;
  r.kind = Region::Kind::GammaSet;
  r.rho = rho;
  r.rho2 = rho2;
  r.theta = theta;
  r.rotation = rotation;
  return r;
}
Region make_annulus(double inner, double outer) {
  Region r;
  r.kind = Region::Kind::Annulus;
  r.inner = inner;
  r.outer = outer;
  return r;
}
Region make_product(std::vector<cplx> sigma_a, std::vector<cplx> sigma_b,
                    std::vector<cplx> tau_grid, double arc_correction) {
  Region r;
  r.kind = Region::Kind::Product;
  r.sigma_a = std::move(sigma_a);
  r.sigma_b = std::move(sigma_b);
  r.tau_grid = std::move(tau_grid);
  r.arc_correction = arc_correction;
  r.tau_dist.resize(r.tau_grid.size());
  for (size_t k = 0; k < r.tau_grid.size(); ++k) {
    double d = kInf;
    for (const cplx a : r.sigma_a) d = std::min(d, std::abs(r.tau_grid[k] - a));
    r.tau_dist[k] = d - arc_correction;
  }
  return r;
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json regs = nlohmann::json::array();
  for (const auto& r : regions) regs.push_back(r.to_json());
  nlohmann::json gaps = nlohmann::json::array();
  for (const auto& a : smeared_gaps) gaps.push_back({{"theta", a.theta}, {"rotation", a.rotation}});
  return nlohmann::json{{"g", g},           {"r_V", rV},       {"gap_condition", gap_ok},
                        {"splits", splits}, {"regions", regs}, {"smeared_gaps", gaps}};
}

Certificate certified_resolvent(const UnitaryEmbedding& emb, double eps_support,
                                const TridiagonalBlockData& bd,
                                const std::vector<GapArc>* analytic_arcs) {
  Certificate cert;
  cert.g = emb.g;
  cert.rV = bd.rV;
  cert.gap_ok = bd.gap_ok;

  if (emb.g > 0.0) {
    Region d = make_disc(0.0, emb.g);
    d.activated_by = "positive polar factor bounded below by g";
    cert.regions.push_back(std::move(d));
  }
  if (bd.gap_ok) {
    Region a = make_annulus(bd.rV, 0.0);
    a.activated_by = "Schur complement invertible for |z| > r(V)";
    cert.regions.push_back(std::move(a));
  }

  std::vector<GapArc> arcs;
  if (analytic_arcs != nullptr) {
    arcs = *analytic_arcs;
  } else {
    for (const auto& gp : unitary_symbol_arcs(emb.v_coin()).gaps())
      arcs.push_back({gp.half_width, gp.rotation});
  }
  std::vector<double> covered_rotations;
  if (emb.g > 0.0 && emb.g < 1.0) {
    for (const GapArc& arc : arcs) {
      const double theta = arc.theta - eps_support;
      if (theta <= 1e-9) continue;
      cert.smeared_gaps.push_back({theta, arc.rotation});
      Region f = make_form_set(theta, emb.g, arc.rotation);
      const bool segment = sq(std::cos(theta)) < 4.0 * emb.g / sq(1.0 + emb.g);
      f.activated_by = std::string("spectral gap arc of the randomized unitary factor") +
                       (segment ? "; covers its radial segment" : "");
      cert.regions.push_back(std::move(f));
      if (segment) covered_rotations.push_back(arc.rotation);
    }
  } else {
    for (const GapArc& arc : arcs) {
      const double theta = arc.theta - eps_support;
      if (theta > 1e-9) cert.smeared_gaps.push_back({theta, arc.rotation});
    }
  }
  // The spectrum separates when two opposite gap regions both cross the
  // radial axis they sit on.
  for (size_t i = 0; i < covered_rotations.size() && !cert.splits; ++i)
    for (size_t j = i + 1; j < covered_rotations.size(); ++j)
      if (std::abs(std::abs(wrap_angle(covered_rotations[i] - covered_rotations[j])) - pi) < 1e-6) {
        cert.splits = true;
        break;
      }
  return cert;
}

}  // namespace nuband
