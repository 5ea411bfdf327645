// Command-line front end: builds random non-unitary band operators from a
// coin specification, runs spectra / pseudospectra / hull sweeps, emits
// resolvent certificates and figure overlays, and runs the acceptance suite.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "nuband/acceptance.hpp"
#include "nuband/bandop.hpp"
#include "nuband/config.hpp"
#include "nuband/io.hpp"
#include "nuband/regions.hpp"
#include "nuband/spectra.hpp"
#include "nuband/svg.hpp"
#include "nuband/symbol.hpp"
#include "nuband/walk.hpp"

namespace {

using namespace nuband;

struct CommonOpts {
  std::string coin_file;
  std::string family;
  double xi = 0.26, eta = 1.05;
  bool g_check = false;
  std::string phases = "uniform";
  double eps = 0.1, theta0 = 0.0;
  std::uint64_t seed = 1;
  int M = 64;
  std::string bc = "periodic";
  int grid = 0;
  std::string out = "out";
  std::string config_file;
};

void add_common(CLI::App* app, CommonOpts& o) {
  app->add_option("--coin", o.coin_file, "coin JSON file (explicit entries or family)");
  app->add_option("--family", o.family, "coin family: drift | g0");
  app->add_option("--xi", o.xi, "family parameter xi (radians)");
  app->add_option("--eta", o.eta, "family parameter eta (radians)");
  app->add_flag("--g-check", o.g_check, "print |det| and arg det of the coin and exit");
  app->add_option("--phases", o.phases, "phase distribution: point | uniform | torus");
  app->add_option("--eps", o.eps, "support half-width of the uniform distribution (radians)");
  app->add_option("--theta0", o.theta0, "point-mass phase (radians)");
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--M", o.M, "number of cells (matrix dimension 2M)");
  app->add_option("--bc", o.bc, "boundary condition: open | periodic");
  app->add_option("--grid", o.grid, "pseudospectrum grid resolution (0 = off)");
  app->add_option("--out", o.out, "output directory");
  app->add_option("--config", o.config_file, "JSON config file (overrides flags)");
}

ExperimentConfig to_config(const CommonOpts& o) {
  ExperimentConfig cfg;
  if (!o.coin_file.empty()) {
    cfg.coin = nlohmann::json::parse(read_file(o.coin_file));
  } else if (!o.family.empty()) {
    cfg.coin = nlohmann::json{{"family", o.family}, {"xi", o.xi}, {"eta", o.eta}};
  }
  cfg.phases = o.phases;
  cfg.eps = o.eps;
  cfg.theta0 = o.theta0;
  cfg.seed = o.seed;
  cfg.M = o.M;
  cfg.bc = o.bc;
  cfg.grid = o.grid;
  cfg.out = o.out;
  // A config file overrides everything given on the command line.
  if (!o.config_file.empty())
    cfg = ExperimentConfig::from_json(nlohmann::json::parse(read_file(o.config_file)));
  return cfg;
}

int handle_g_check(const ExperimentConfig& cfg) {
  const UnitaryEmbedding emb = coin_from_json(cfg.coin);
  const auto [g, chi] = det_g_chi(emb.coin());
  std::printf("g = %.17g\nchi = %.17g\nembedding_g = %.17g\n", g, chi, emb.g);
  return 0;
}

int cmd_figures(double theta, double g, double gamma_rho, double gamma_rho2,
                const std::string& out) {
  std::filesystem::create_directories(out);
  {
    SvgCanvas canvas;
    const Region form = make_form_set(theta, g);
    for (const auto& line : form.boundary()) canvas.polyline(line, "#000000", 1.4);
    canvas.circle(0.0, 1.0, "#cc0000");
    canvas.circle(0.0, g, "#cc0000");
    if (theta < pi / 2)
      canvas.polyline({cplx(std::cos(theta), -1.3), cplx(std::cos(theta), 1.3)}, "#cc0000", 1.0);
    canvas.text(cplx(-1.3, 1.25), "resolvent region boundaries", "#000000");
    write_file(out + "/figure_regions.svg", canvas.str());
    // CSV polylines of the boundary for external plotting.
    std::string csv = "piece,re,im\n";
    int piece = 0;
    for (const auto& line : form.boundary()) {
      for (const cplx p : line)
        csv += std::to_string(piece) + "," + format_g17(p.real()) + "," + format_g17(p.imag()) + "\n";
      ++piece;
    }
    write_file(out + "/figure_regions.csv", csv);
  }
  if (gamma_rho > 0.0 && gamma_rho2 > 0.0) {
    SvgCanvas canvas(std::max(1.35, gamma_rho + gamma_rho2));
    const Region gam = make_gamma_set(gamma_rho, gamma_rho2, theta);
    for (const auto& line : gam.boundary(gamma_rho + gamma_rho2 + 0.2))
      canvas.polyline(line, "#000000", 1.4);
    canvas.circle(0.0, 1.0, "#cc0000");
    write_file(out + "/figure_gamma.svg", canvas.str());
  }
  std::printf("wrote %s/figure_regions.svg\n", out.c_str());
  return 0;
}

int cmd_certify(const ExperimentConfig& cfg) {
  const UnitaryEmbedding emb = coin_from_json(cfg.coin);
  if (emb.g >= 1.0 - 1e-9) throw ConfigError("certify: the unitary limit has no block data");
  const TridiagonalBlockData bd = tridiag_blocks(emb);
  const double support = cfg.phases == "point" ? 0.0 : cfg.phases == "uniform" ? cfg.eps : pi;
  Certificate cert;
  if (cfg.coin.contains("family") && cfg.coin.at("family") == "drift") {
    const double eta = cfg.coin.value("eta", 0.0);
    const std::vector<GapArc> arcs{{eta, 0.0}, {eta, pi}};
    cert = certified_resolvent(emb, support, bd, &arcs);
  } else {
    cert = certified_resolvent(emb, support, bd);
  }
  std::filesystem::create_directories(cfg.out);
  const std::string text = cert.to_json().dump(2) + "\n";
  write_file(cfg.out + "/certificate.json", text);
  std::fputs(text.c_str(), stdout);
  return 0;
}

int cmd_selftest(int threads) {
  const auto results = run_acceptance(std::cout, threads);
  return acceptance_passed(results) ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-unitary band operator toolkit"};
  app.require_subcommand(1);

  CommonOpts run_o, cert_o, spec_o, pseudo_o, hull_o, walk_o, export_o;
  bool run_hull = false, run_walk = false;
  double fig_theta = 0.8, fig_g = 0.3, fig_rho = 0.0, fig_rho2 = 0.0;
  std::string fig_out = "out";
  int threads = 0;
  int walk_depth_opt = 12, walk_nmax = 10;
  std::string walk_graph = "tree";

  CLI::App* c_run = app.add_subcommand("run", "full experiment bundle");
  add_common(c_run, run_o);
  c_run->add_flag("--hull", run_hull, "include the periodic-word hull sweep");
  c_run->add_flag("--walk", run_walk, "include the walk reduction checks");
  c_run->add_option("--threads", threads, "worker threads (0 = hardware)");

  CLI::App* c_fig = app.add_subcommand("figures", "region boundary overlay figures");
  c_fig->add_option("--theta", fig_theta, "gap half-width (radians)");
  c_fig->add_option("--g", fig_g, "positive factor lower level");
  c_fig->add_option("--gamma-rho", fig_rho, "tangent-disc radius for the wedge figure");
  c_fig->add_option("--gamma-rho2", fig_rho2, "inner disc radius for the wedge figure");
  c_fig->add_option("--out", fig_out, "output directory");

  CLI::App* c_cert = app.add_subcommand("certify", "resolvent certificate JSON");
  add_common(c_cert, cert_o);

  CLI::App* c_spec = app.add_subcommand("spectrum", "truncation + symbol spectra CSVs");
  add_common(c_spec, spec_o);

  CLI::App* c_pseudo = app.add_subcommand("pseudospec", "sigma_min grid CSV + SVG");
  add_common(c_pseudo, pseudo_o);
  c_pseudo->add_option("--threads", threads, "worker threads (0 = hardware)");

  CLI::App* c_hull = app.add_subcommand("hull", "periodic-word spectral hull");
  add_common(c_hull, hull_o);

  CLI::App* c_walk = app.add_subcommand("walk", "walk reduction checks and autocorrelation");
  add_common(c_walk, walk_o);
  c_walk->add_option("--depth", walk_depth_opt, "tree depth / lattice half-side");
  c_walk->add_option("--steps", walk_nmax, "number of walk steps");
  c_walk->add_option("--graph", walk_graph, "tree | lattice");

  CLI::App* c_export = app.add_subcommand("export-matrix", "band matrix CSV + manifest");
  add_common(c_export, export_o);

  CLI::App* c_self = app.add_subcommand("selftest", "run the acceptance suite");
  c_self->add_option("--threads", threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (c_run->parsed()) {
      ExperimentConfig cfg = to_config(run_o);
      cfg.hull = run_hull || cfg.hull;
      cfg.walk = run_walk || cfg.walk;
      if (run_o.g_check) return handle_g_check(cfg);
      run_experiment(cfg, threads);
      std::printf("report bundle written to %s\n", cfg.out.c_str());
      return 0;
    }
    if (c_fig->parsed()) return cmd_figures(fig_theta, fig_g, fig_rho, fig_rho2, fig_out);
    if (c_cert->parsed()) {
      if (cert_o.g_check) return handle_g_check(to_config(cert_o));
      return cmd_certify(to_config(cert_o));
    }
    if (c_spec->parsed()) {
      ExperimentConfig cfg = to_config(spec_o);
      cfg.regions = false;
      if (spec_o.g_check) return handle_g_check(cfg);
      run_experiment(cfg);
      std::printf("spectra written to %s\n", cfg.out.c_str());
      return 0;
    }
    if (c_pseudo->parsed()) {
      ExperimentConfig cfg = to_config(pseudo_o);
      if (cfg.grid <= 0) cfg.grid = 128;
      run_experiment(cfg, threads);
      std::printf("pseudospectrum grid written to %s\n", cfg.out.c_str());
      return 0;
    }
    if (c_hull->parsed()) {
      ExperimentConfig cfg = to_config(hull_o);
      cfg.hull = true;
      run_experiment(cfg);
      std::printf("hull written to %s\n", cfg.out.c_str());
      return 0;
    }
    if (c_walk->parsed()) {
      const ExperimentConfig cfg = to_config(walk_o);
      const UnitaryEmbedding emb = coin_from_json(cfg.coin);
      const CoinU4 coin{emb, 0.0};
      const WalkGraph graph = walk_graph == "lattice" ? WalkGraph::Lattice : WalkGraph::Tree;
      const PhaseDist dist = cfg.phases == "point"     ? PhaseDist::PointMass
                             : cfg.phases == "uniform" ? PhaseDist::UniformInterval
                                                       : PhaseDist::UniformTorus;
      const double dev =
          dilation_check(coin, graph, walk_depth_opt, walk_nmax, dist, cfg.eps, cfg.seed);
      const auto a =
          walk_autocorrelation(coin, graph, walk_depth_opt, walk_nmax, dist, cfg.eps, cfg.seed);
      std::filesystem::create_directories(cfg.out);
      write_file(cfg.out + "/autocorrelation.csv", autocorrelation_csv(a));
      const nlohmann::json walk_cfg{{"graph", walk_graph},
                                    {"depth", walk_depth_opt},
                                    {"steps", walk_nmax},
                                    {"phases", cfg.phases},
                                    {"eps", cfg.eps},
                                    {"seed", cfg.seed},
                                    {"coin", coin_to_json(emb)},
                                    {"dilation_deviation", dev},
                                    {"autocorrelation_rate", autocorrelation_rate(a)}};
      write_file(cfg.out + "/walk_config.json", walk_cfg.dump(2) + "\n");
      std::printf("dilation deviation %.3e, fitted rate %.6f, wrote %s/autocorrelation.csv\n", dev,
                  autocorrelation_rate(a), cfg.out.c_str());
      return 0;
    }
    if (c_export->parsed()) {
      const ExperimentConfig cfg = to_config(export_o);
      const UnitaryEmbedding emb = coin_from_json(cfg.coin);
      const PhaseField ph = cfg.phase_field();
      const Boundary bc = cfg.bc == "open" ? Boundary::Open : Boundary::Periodic;
      const BandMatrix T = build_T(emb, ph, cfg.M, bc);
      std::filesystem::create_directories(cfg.out);
      std::ostringstream csv;
      T.write_csv(csv);
      write_file(cfg.out + "/matrix_T.csv", csv.str());
      write_file(cfg.out + "/matrix_manifest.json",
                 band_manifest(emb, ph, cfg.M, bc, BandKind::T).dump(2) + "\n");
      std::printf("wrote %s/matrix_T.csv and manifest\n", cfg.out.c_str());
      return 0;
    }
    if (c_self->parsed()) return cmd_selftest(threads);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  return 0;
}
