#include "nuband/config.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "nuband/bandop.hpp"
#include "nuband/io.hpp"
#include "nuband/regions.hpp"
#include "nuband/spectra.hpp"
#include "nuband/svg.hpp"
#include "nuband/symbol.hpp"
#include "nuband/walk.hpp"

namespace nuband {

namespace {
void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                const char* where) {
  for (auto& [key, val] : j.items()) {
    (void)val;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
  }
}
}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  check_keys(j, {"coin", "phases", "sizes", "regions", "hull", "walk", "out"}, "config");
  ExperimentConfig c;
  if (j.contains("coin")) c.coin = j.at("coin");
  if (j.contains("phases")) {
    const auto& p = j.at("phases");
    check_keys(p, {"distribution", "eps", "theta0", "seed"}, "config.phases");
    c.phases = p.value("distribution", c.phases);
    if (c.phases != "point" && c.phases != "uniform" && c.phases != "torus")
      throw ConfigError("config.phases.distribution must be point|uniform|torus");
    c.eps = p.value("eps", c.eps);
    c.theta0 = p.value("theta0", c.theta0);
    c.seed = p.value("seed", c.seed);
  }
  if (j.contains("sizes")) {
    const auto& s = j.at("sizes");
    check_keys(s, {"M", "bc", "xsamples", "ells", "words_per_l", "grid"}, "config.sizes");
    c.M = s.value("M", c.M);
    c.bc = s.value("bc", c.bc);
    if (c.bc != "open" && c.bc != "periodic") throw ConfigError("config.sizes.bc must be open|periodic");
    c.xsamples = s.value("xsamples", c.xsamples);
    if (s.contains("ells")) c.ells = s.at("ells").get<std::vector<int>>();
    for (const int l : c.ells)
      if (l < 2 || l % 2 != 0) throw ConfigError("config.sizes.ells must be even and >= 2");
    c.words_per_l = s.value("words_per_l", c.words_per_l);
    c.grid = s.value("grid", c.grid);
  }
  if (j.contains("regions")) c.regions = j.at("regions").get<bool>();
  if (j.contains("hull")) c.hull = j.at("hull").get<bool>();
  if (j.contains("walk")) c.walk = j.at("walk").get<bool>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (c.M < 2) throw ConfigError("config.sizes.M must be >= 2");
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  return nlohmann::json{
      {"coin", coin},
      {"phases", {{"distribution", phases}, {"eps", eps}, {"theta0", theta0}, {"seed", seed}}},
      {"sizes",
       {{"M", M},
        {"bc", bc},
        {"xsamples", xsamples},
        {"ells", ells},
        {"words_per_l", words_per_l},
        {"grid", grid}}},
      {"regions", regions},
      {"hull", hull},
      {"walk", walk},
      {"out", out}};
}

PhaseField ExperimentConfig::phase_field() const {
  if (phases == "point") return PhaseField::point(theta0);
  if (phases == "uniform") return PhaseField::uniform(eps, seed);
  return PhaseField::torus(seed);
}

namespace {

void draw_reference_circles(SvgCanvas& canvas, double g) {
  canvas.circle(0.0, 1.0, "#cc0000");
  if (g > 0.0) canvas.circle(0.0, g, "#cc0000");
}

std::string regions_svg(const Certificate& cert, const std::vector<cplx>& spectrum_points) {
  SvgCanvas canvas;
  for (const Region& r : cert.regions)
    for (const auto& line : r.boundary())
      canvas.polyline(line, r.kind == Region::Kind::Annulus ? "#3355cc" : "#000000", 1.2);
  draw_reference_circles(canvas, cert.g);
  for (const cplx z : spectrum_points) canvas.dot(z, 1.2, "#227722");
  return canvas.str();
}

}  // namespace

nlohmann::json run_experiment(const ExperimentConfig& cfg, int threads) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out);
  const UnitaryEmbedding emb = coin_from_json(cfg.coin);
  const PhaseField ph = cfg.phase_field();
  const Boundary bc = cfg.bc == "open" ? Boundary::Open : Boundary::Periodic;

  nlohmann::json report;
  report["config"] = cfg.to_json();
  report["coin"] = coin_to_json(emb);
  report["g"] = emb.g;
  report["chi"] = emb.chi;

  const StructureFlags flags = classify_structure(emb);
  report["structure"] = {{"cnu", flags.cnu},
                         {"v_offdiagonal", flags.v_offdiagonal},
                         {"v_diagonal", flags.v_diagonal},
                         {"alpha_delta_zero", flags.alpha_delta_zero},
                         {"beta_gamma_zero", flags.beta_gamma_zero},
                         {"closed_form", flags.closed_form}};

  std::vector<std::string> files;

  // Truncation and its spectrum.
  const BandMatrix T = build_T(emb, ph, cfg.M, bc);
  {
    std::ostringstream csv;
    T.write_csv(csv);
    write_file(cfg.out + "/matrix_T.csv", csv.str());
    write_file(cfg.out + "/matrix_manifest.json",
               band_manifest(emb, ph, cfg.M, bc, BandKind::T).dump(2) + "\n");
    files.push_back("matrix_T.csv");
    files.push_back("matrix_manifest.json");
    const SpectrumEstimate est = eigvals_estimate(T.m, 1e-9, "matrix_T.csv");
    write_file(cfg.out + "/truncation_eigs.csv", points_csv(est.eigenvalues));
    files.push_back("truncation_eigs.csv");
    report["truncation"] = {{"M", cfg.M},
                            {"bc", cfg.bc},
                            {"operator_norm", operator_norm(T.m)},
                            {"spectral_radius", spectral_radius(T.m)}};
  }

  // Translation-invariant spectrum.
  const SymbolSpectrum ti = ti_spectrum(emb, uniform_grid(cfg.xsamples));
  write_file(cfg.out + "/ti_spectrum.csv", spectrum_csv(ti));
  files.push_back("ti_spectrum.csv");

  std::vector<cplx> overlay_points;
  {
    const std::vector<cplx> pts = ti.points();
    for (size_t i = 0; i < pts.size(); i += std::max<size_t>(1, pts.size() / 800))
      overlay_points.push_back(pts[i]);
  }

  // Certificates.
  if (cfg.regions && emb.g < 1.0 - 1e-9) {
    const TridiagonalBlockData bd = tridiag_blocks(emb);
    report["block_norms"] = {{"V11", bd.norm[0][0]},
                             {"V12", bd.norm[0][1]},
                             {"V21", bd.norm[1][0]},
                             {"V22", bd.norm[1][1]}};
    auto wpair = [](cplx w) { return nlohmann::json::array({w.real(), w.imag()}); };
    report["w_coefficients"] = {
        {"w_plus_11", wpair(bd.w_plus[0][0])},   {"w_minus_11", wpair(bd.w_minus[0][0])},
        {"w_plus_12", wpair(bd.w_plus[0][1])},   {"w_minus_12", wpair(bd.w_minus[0][1])},
        {"w_plus_21", wpair(bd.w_plus[1][0])},   {"w_minus_21", wpair(bd.w_minus[1][0])},
        {"w_plus_22", wpair(bd.w_plus[1][1])},   {"w_minus_22", wpair(bd.w_minus[1][1])}};
    const double support = cfg.phases == "point" ? 0.0
                           : cfg.phases == "uniform" ? cfg.eps
                                                     : pi;
    Certificate cert;
    if (cfg.coin.contains("family") && cfg.coin.at("family") == "drift") {
      // Analytic gap arcs of the planar-rotation unitary factor.
      const double eta = cfg.coin.value("eta", 0.0);
      std::vector<GapArc> arcs = {{eta, 0.0}, {eta, pi}};
      cert = certified_resolvent(emb, support, bd, &arcs);
    } else {
      cert = certified_resolvent(emb, support, bd);
    }
    report["certificate"] = cert.to_json();
    write_file(cfg.out + "/certificate.json", cert.to_json().dump(2) + "\n");
    files.push_back("certificate.json");
    write_file(cfg.out + "/regions.svg", regions_svg(cert, overlay_points));
    files.push_back("regions.svg");
  }

  // Ergodic hull.
  if (cfg.hull) {
    const int lmax = *std::max_element(cfg.ells.begin(), cfg.ells.end());
    const HullEstimate hull =
        ergodic_hull(emb, ph, lmax, cfg.words_per_l, std::max(128, cfg.xsamples / 8), cfg.seed);
    write_file(cfg.out + "/hull.csv", points_csv(hull.points));
    files.push_back("hull.csv");
    report["hull"] = {{"lmax", hull.lmax},
                      {"words_per_l", hull.words_per_l},
                      {"points", hull.points.size()},
                      {"lower_bound_only", !hull.is_exact}};
    if (hull.has_annulus) {
      report["hull"]["annulus"] = {hull.r_in, hull.r_out};
      report["hull"]["includes_zero"] = hull.includes_zero;
    }
    SvgCanvas canvas;
    for (size_t i = 0; i < hull.points.size(); i += std::max<size_t>(1, hull.points.size() / 4000))
      canvas.dot(hull.points[i], 1.0, "#333388");
    draw_reference_circles(canvas, emb.g);
    write_file(cfg.out + "/hull.svg", canvas.str());
    files.push_back("hull.svg");
  }

  // Pseudospectrum grid.
  if (cfg.grid > 0) {
    GridSpec spec;
    spec.nre = spec.nim = cfg.grid;
    const PseudospectrumGrid grid = pseudospectrum(T, spec, threads);
    write_file(cfg.out + "/pseudospectrum.csv", pseudospectrum_csv(grid));
    files.push_back("pseudospectrum.csv");
    SvgCanvas canvas;
    const double dx = (spec.re1 - spec.re0) / (spec.nre - 1);
    const double dy = (spec.im1 - spec.im0) / (spec.nim - 1);
    for (int i = 0; i < spec.nim; ++i)
      for (int j = 0; j < spec.nre; ++j) {
        const double x = spec.re0 + dx * j, y = spec.im0 + dy * i;
        const double v = std::log10(std::max(grid.at(i, j), 1e-16));
        canvas.cell(cplx(x, y), cplx(x + dx, y + dy), gray_shade(v, -16.0, 0.0), 1.0);
      }
    draw_reference_circles(canvas, emb.g);
    write_file(cfg.out + "/pseudospectrum.svg", canvas.str());
    files.push_back("pseudospectrum.svg");
    report["pseudospectrum"] = {{"grid", cfg.grid}, {"truncation", grid.truncation}};
  }

  // Walk reduction checks.
  if (cfg.walk) {
    const PhaseDist dist = ph.dist == PhaseDist::Explicit ? PhaseDist::UniformTorus : ph.dist;
    const CoinU4 coin{emb, 0.0};
    const double dev = dilation_check(coin, WalkGraph::Tree, 12, 10, dist, cfg.eps, cfg.seed);
    const auto a = walk_autocorrelation(coin, WalkGraph::Tree, 12, 10, dist, cfg.eps, cfg.seed);
    write_file(cfg.out + "/autocorrelation.csv", autocorrelation_csv(a));
    files.push_back("autocorrelation.csv");
    report["walk"] = {{"dilation_deviation", dev},
                      {"autocorrelation_rate", autocorrelation_rate(a)},
                      {"escape_deviation",
                       escape_check(coin, WalkGraph::Tree, 12, 10, dist, cfg.eps, cfg.seed)}};
  }

  report["files"] = files;
  write_file(cfg.out + "/report.json", report.dump(2) + "\n");
  return report;
}

}  // namespace nuband
