#include "nuband/coin.hpp"

#include <algorithm>
#include <cmath>

#include "nuband/svd.hpp"

namespace nuband {

Mat CoinContraction::as_matrix() const {
  Mat m(2, 2);
  m(0, 0) = alpha;
  m(0, 1) = beta;
  m(1, 0) = gamma;
  m(1, 1) = delta;
  return m;
}

Mat UnitaryEmbedding::as_matrix() const {
  Mat m(3, 3);
  m(0, 0) = alpha;
  m(0, 1) = r;
  m(0, 2) = beta;
  m(1, 0) = q;
  m(1, 1) = g;
  m(1, 2) = s;
  m(2, 0) = gamma;
  m(2, 1) = t;
  m(2, 2) = delta;
  return m;
}

CoinContraction UnitaryEmbedding::v_coin() const {
  const double f = 1.0 / (1.0 + g);
  return {f * (alpha * (1.0 + g) - q * r), f * (beta * (1.0 + g) - s * r),
          f * (gamma * (1.0 + g) - q * t), f * (delta * (1.0 + g) - s * t)};
}

std::pair<double, double> det_g_chi(const CoinContraction& c0) {
  const cplx d = c0.alpha * c0.delta - c0.beta * c0.gamma;
  const double g = std::abs(d);
  return {g, g == 0.0 ? 0.0 : std::arg(d)};
}

namespace {

// Eigen-decomposition of the 2x2 Hermitian PSD matrix C0* C0.
struct Herm2Eig {
  double lmin, lmax;
  cplx vmin[2];  // unit eigenvector for lmin
};

Herm2Eig herm2_eig(const Mat& h) {
  const double a = h(0, 0).real(), d = h(1, 1).real();
  const cplx b = h(0, 1);
  const double tr = a + d;
  const double gap = std::sqrt(sq(a - d) + 4.0 * abs2(b));
  Herm2Eig out;
  out.lmax = 0.5 * (tr + gap);
  out.lmin = 0.5 * (tr - gap);
  // vmin solves (H - lmin) v = 0: take the null vector of the larger row.
  const cplx r1[2] = {cplx(a - out.lmin), b};
  const cplx r2[2] = {std::conj(b), cplx(d - out.lmin)};
  const double n1 = std::sqrt(abs2(r1[0]) + abs2(r1[1]));
  const double n2 = std::sqrt(abs2(r2[0]) + abs2(r2[1]));
  cplx v0, v1;
  if (n1 >= n2 && n1 > 0.0) {
    v0 = -r1[1];
    v1 = r1[0];
  } else if (n2 > 0.0) {
    v0 = -r2[1];
    v1 = r2[0];
  } else {
    v0 = 1.0;  // degenerate H = lmin I: any direction
    v1 = 0.0;
  }
  const double nn = std::sqrt(abs2(v0) + abs2(v1));
  out.vmin[0] = v0 / nn;
  out.vmin[1] = v1 / nn;
  return out;
}

// Multiply by the phase making the first component of magnitude above the
// cutoff real and nonnegative.
void gauge_fix(cplx v[2], double cutoff) {
  cplx lead = v[0];
  if (std::abs(lead) <= cutoff) lead = v[1];
  if (std::abs(lead) == 0.0) return;
  const cplx ph = std::conj(lead) / std::abs(lead);
  v[0] *= ph;
  v[1] *= ph;
}

}  // namespace

UnitaryEmbedding embed(const CoinContraction& c0, double tol) {
  const Mat m = c0.as_matrix();
  const Mat h = m.adjoint() * m;
  const Herm2Eig eg = herm2_eig(h);
  const double smax = std::sqrt(std::max(0.0, eg.lmax));
  if (smax > 1.0 + tol)
    throw std::invalid_argument("embed: coin is not a contraction (singular value " +
                                std::to_string(smax) + ")");
  // For a coin that borders to a 3x3 unitary the largest singular value is 1,
  // so the smaller one equals |det|. The determinant route is accurate to
  // relative eps even when g is tiny, unlike sqrt(lmin) which loses half the
  // digits; non-embeddable inputs are caught by the final unitarity check.
  const double g = std::min(1.0, det_g_chi(c0).first);

  UnitaryEmbedding e;
  e.alpha = c0.alpha;
  e.beta = c0.beta;
  e.gamma = c0.gamma;
  e.delta = c0.delta;
  e.g = g;
  e.chi = det_g_chi(c0).second;

  const double vnorm2 = std::max(0.0, 1.0 - g * g);
  if (vnorm2 <= 1e-12) {
    // Unitary coin: border with the trivial block.
    e.q = e.s = e.r = e.t = 0.0;
    e.g = 1.0;
  } else {
    cplx v[2] = {eg.vmin[0], eg.vmin[1]};
    gauge_fix(v, 1e-13);
    const double vn = std::sqrt(vnorm2);
    v[0] *= vn;
    v[1] *= vn;
    // Middle row holds conj(v).
    e.q = std::conj(v[0]);
    e.s = std::conj(v[1]);
    // u is the vector -C0 v / g. Evaluating that quotient directly loses
    // ~eps/g digits of direction, so take the direction as the small-singular
    // eigenvector of C0 C0* and align its phase with -C0 v. The phase error
    // eps/g is multiplied back by g in every unitarity residual, keeping the
    // bordered matrix unitary to machine precision uniformly in g.
    const Mat hh = m * m.adjoint();
    const Herm2Eig egu = herm2_eig(hh);
    cplx u[2] = {egu.vmin[0], egu.vmin[1]};
    const cplx c0v0 = c0.alpha * v[0] + c0.beta * v[1];
    const cplx c0v1 = c0.gamma * v[0] + c0.delta * v[1];
    const cplx w = std::conj(u[0]) * (-c0v0) + std::conj(u[1]) * (-c0v1);
    if (std::abs(w) > 1e-14) {
      const cplx ph = w / std::abs(w);
      u[0] *= ph;
      u[1] *= ph;
    } else {
      // g vanishes: u spans ker C0*; fix the free phase by the gauge rule.
      gauge_fix(u, 1e-13);
    }
    u[0] *= vn;
    u[1] *= vn;
    e.r = u[0];
    e.t = u[1];
  }

  const Mat c = e.as_matrix();
  const double resid = (c.adjoint() * c - Mat::identity(3)).max_abs();
  if (resid > tol)
    throw NumericError(
        "embed: bordered matrix is not unitary (largest coin singular value must be 1); "
        "residual " +
        std::to_string(resid));
  return e;
}

UnitaryEmbedding family_drift(const FamilyParams& p) {
  if (!(p.xi >= 0.0 && p.xi <= pi / 2 && p.eta >= 0.0 && p.eta <= pi / 2))
    throw std::invalid_argument("family_drift: parameters must lie in [0, pi/2]");
  const double cxi = std::cos(p.xi), sxi = std::sin(p.xi);
  const double ceta = std::cos(p.eta), seta = std::sin(p.eta);
  UnitaryEmbedding e;
  e.alpha = ceta;
  e.r = cxi * seta;
  e.beta = -sxi * seta;
  e.q = 0.0;
  e.s = cxi;
  e.gamma = seta;
  e.t = -cxi * ceta;
  e.delta = sxi * ceta;
  e.g = sxi;
  e.chi = 0.0;  // det coin = sin(xi) >= 0
  return e;
}

UnitaryEmbedding family_g0(const FamilyParams& p) {
  if (!(p.xi >= 0.0 && p.xi <= pi / 2 && p.eta >= 0.0 && p.eta <= pi / 2))
    throw std::invalid_argument("family_g0: parameters must lie in [0, pi/2]");
  const double cxi = std::cos(p.xi), sxi = std::sin(p.xi);
  const double ceta = std::cos(p.eta), seta = std::sin(p.eta);
  UnitaryEmbedding e;
  e.alpha = cxi * seta;
  e.r = ceta;
  e.beta = -sxi * seta;
  e.q = sxi;
  e.s = cxi;
  e.gamma = -cxi * ceta;
  e.t = seta;
  e.delta = sxi * ceta;
  e.g = 0.0;
  e.chi = 0.0;
  return e;
}

bool contraction_is_unitary(const Mat& w, double tol) {
  if (w.rows() != w.cols()) throw std::invalid_argument("contraction_is_unitary: square input");
  const double norm = operator_norm_of(w);
  if (norm > 1.0 + tol)
    throw std::invalid_argument("contraction_is_unitary: input is not a contraction");
  const Mat res = w.adjoint() * w - Mat::identity(w.rows());
  return operator_norm_of(res) <= tol;
}

namespace {
cplx json_to_cplx(const nlohmann::json& j, const char* name) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(std::string("coin entry '") + name + "' must be [re, im]");
  return cplx(j[0].get<double>(), j[1].get<double>());
}
}  // namespace

UnitaryEmbedding coin_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("coin spec must be a JSON object");
  if (j.contains("family")) {
    for (auto& [key, val] : j.items()) {
      (void)val;
      if (key != "family" && key != "xi" && key != "eta")
        throw ConfigError("coin spec: unknown key '" + key + "'");
    }
    const std::string fam = j.at("family").get<std::string>();
    FamilyParams p{j.value("xi", 0.0), j.value("eta", 0.0)};
    if (fam == "drift") return family_drift(p);
    if (fam == "g0") return family_g0(p);
    throw ConfigError("coin spec: family must be 'drift' or 'g0'");
  }
  for (auto& [key, val] : j.items()) {
    (void)val;
    if (key != "alpha" && key != "beta" && key != "gamma" && key != "delta")
      throw ConfigError("coin spec: unknown key '" + key + "'");
  }
  CoinContraction c0{json_to_cplx(j.at("alpha"), "alpha"), json_to_cplx(j.at("beta"), "beta"),
                     json_to_cplx(j.at("gamma"), "gamma"), json_to_cplx(j.at("delta"), "delta")};
  return embed(c0);
}

nlohmann::json coin_to_json(const UnitaryEmbedding& e) {
  auto pair = [](cplx z) { return nlohmann::json::array({z.real(), z.imag()}); };
  return nlohmann::json{{"alpha", pair(e.alpha)}, {"r", pair(e.r)},         {"beta", pair(e.beta)},
                        {"q", pair(e.q)},         {"g", e.g},              {"s", pair(e.s)},
                        {"gamma", pair(e.gamma)}, {"t", pair(e.t)},        {"delta", pair(e.delta)},
                        {"chi", e.chi}};
}

Mat random_unitary(Rng& rng, int n) {
  // Gram-Schmidt on a complex Gaussian matrix.
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian_complex();
  for (int j = 0; j < n; ++j) {
    for (int rep = 0; rep < 2; ++rep) {
      for (int c = 0; c < j; ++c) {
        cplx d = 0.0;
        for (int i = 0; i < n; ++i) d += std::conj(a(i, c)) * a(i, j);
        for (int i = 0; i < n; ++i) a(i, j) -= d * a(i, c);
      }
    }
    double nn = 0.0;
    for (int i = 0; i < n; ++i) nn += abs2(a(i, j));
    nn = std::sqrt(nn);
    for (int i = 0; i < n; ++i) a(i, j) /= nn;
  }
  return a;
}

CoinContraction random_embeddable_coin(Rng& rng) {
  const Mat u = random_unitary(rng, 3);
  return {u(0, 0), u(0, 2), u(2, 0), u(2, 2)};
}

CoinContraction random_coin_with_g(Rng& rng, double g) {
  const Mat u = random_unitary(rng, 2);
  const Mat w = random_unitary(rng, 2);
  Mat d(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = g;
  const Mat c = u * d * w.adjoint();
  return {c(0, 0), c(0, 1), c(1, 0), c(1, 1)};
}

}  // namespace nuband
