#include <filesystem>

#include "doctest.h"
#include "nuband/config.hpp"
#include "nuband/io.hpp"
#include "nuband/symbol.hpp"

using namespace nuband;
namespace fs = std::filesystem;

TEST_CASE("config schema validation") {
  const nlohmann::json good{
      {"coin", {{"family", "drift"}, {"xi", 0.26}, {"eta", 1.05}}},
      {"phases", {{"distribution", "uniform"}, {"eps", 0.1}, {"seed", 3}}},
      {"sizes", {{"M", 16}, {"bc", "periodic"}, {"xsamples", 128}}},
      {"out", "cfg_out"}};
  const ExperimentConfig cfg = ExperimentConfig::from_json(good);
  CHECK(cfg.M == 16);
  CHECK(cfg.eps == 0.1);
  CHECK(cfg.seed == 3);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"unknown", 1}}), ConfigError);
  CHECK_THROWS_AS(
      ExperimentConfig::from_json(nlohmann::json{{"phases", {{"distribution", "weird"}}}}),
      ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"sizes", {{"bc", "twisted"}}}}),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"sizes", {{"ells", {3}}}}}),
                  ConfigError);
  // Round trip through JSON is stable.
  CHECK(ExperimentConfig::from_json(cfg.to_json()).to_json() == cfg.to_json());
}

TEST_CASE("CSV round trips") {
  const UnitaryEmbedding e = family_drift({0.3, 0.9});
  const SymbolSpectrum s = ti_spectrum(e, uniform_grid(64));
  const SymbolSpectrum back = parse_spectrum_csv(spectrum_csv(s));
  REQUIRE(back.xs.size() == s.xs.size());
  for (size_t i = 0; i < s.xs.size(); ++i) {
    CHECK(back.xs[i] == s.xs[i]);
    REQUIRE(back.eigs[i].size() == s.eigs[i].size());
    for (size_t k = 0; k < s.eigs[i].size(); ++k) CHECK(back.eigs[i][k] == s.eigs[i][k]);
  }
  const std::vector<cplx> pts{{0.25, -0.75}, {1e-17, 2.0}, {-3.5, 0.0}};
  const std::vector<cplx> back_pts = parse_points_csv(points_csv(pts));
  REQUIRE(back_pts.size() == pts.size());
  for (size_t i = 0; i < pts.size(); ++i) CHECK(back_pts[i] == pts[i]);
}

TEST_CASE("experiment bundles are byte-identical across runs") {
  ExperimentConfig cfg;
  cfg.coin = nlohmann::json{{"family", "drift"}, {"xi", 0.26}, {"eta", 1.05}};
  cfg.M = 12;
  cfg.xsamples = 64;
  cfg.seed = 42;
  cfg.hull = true;
  cfg.ells = {2, 4};
  cfg.words_per_l = 5;
  cfg.walk = true;
  const fs::path base = fs::temp_directory_path() / "nuband_test_runs";
  fs::remove_all(base);
  ExperimentConfig a = cfg, b = cfg;
  a.out = (base / "a").string();
  b.out = (base / "b").string();
  const nlohmann::json ra = run_experiment(a, 1);
  const nlohmann::json rb = run_experiment(b, 1);
  // The report carries the full schema.
  for (const char* key : {"config", "coin", "g", "chi", "structure", "truncation",
                          "block_norms", "w_coefficients", "certificate", "hull", "walk",
                          "files"})
    CHECK(ra.contains(key));
  CHECK(ra.at("certificate").contains("regions"));
  CHECK(ra.at("certificate").contains("splits"));
  for (const std::string name :
       {"report.json", "ti_spectrum.csv", "truncation_eigs.csv", "certificate.json",
        "regions.svg", "hull.csv", "autocorrelation.csv", "matrix_T.csv"}) {
    const std::string fa = read_file(a.out + "/" + name);
    std::string fb = read_file(b.out + "/" + name);
    // The report embeds the output path; normalize it before comparing.
    if (name == "report.json") {
      std::string sa = fa, sb = fb;
      const std::string pa = "\"" + a.out + "\"", pb = "\"" + b.out + "\"";
      size_t pos;
      while ((pos = sa.find(pa)) != std::string::npos) sa.replace(pos, pa.size(), "\"OUT\"");
      while ((pos = sb.find(pb)) != std::string::npos) sb.replace(pos, pb.size(), "\"OUT\"");
      CHECK(sa == sb);
      continue;
    }
    CHECK(fa == fb);
  }
  fs::remove_all(base);
}

TEST_CASE("runs fail cleanly on bad configuration") {
  ExperimentConfig cfg;
  cfg.coin = nlohmann::json{{"family", "drift"}, {"xi", 9.0}, {"eta", 1.0}};
  cfg.out = (fs::temp_directory_path() / "nuband_bad_run").string();
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}
