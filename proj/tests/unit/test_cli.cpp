#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "faddeev/config.hpp"
#include "faddeev/driver.hpp"
#include "faddeev/io.hpp"

using namespace faddeev;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("faddeev_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int error_line(const std::string& text) {
  try {
    parse_config(text, "test.ini");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("test.ini:", 0) == 0);
    return e.line();
  }
  return -1;
}

AlphaQuadrature toy_quadrature() {
  AlphaQuadrature q;
  q.channels = 1;
  q.points = {0.3, 0.9, 1.3};
  q.weights = {0.5, 0.5, 0.5707963267948966};
  q.transform = Eigen::MatrixXd::Zero(3, 3);
  return q;
}

}  // namespace

TEST_CASE("configuration errors carry line numbers") {
  CHECK(error_line("[grid]\nn_rho = 64\nbogus = 3\n") == 3);
  CHECK(error_line("[grid]\n\n# comment\nn_rho = sixty\n") == 4);
  CHECK(error_line("[nowhere]\nx = 1\n") == 1);
  CHECK(error_line("[grid]\nn_rho 64\n") == 2);
  CHECK(error_line("[run]\nincoming = nd xyz\n") == 2);
  CHECK(error_line("[physics]\nmasses = 1 2 1\n") == 2);
  CHECK(error_line("[grid]\nn_rho = 63\n") > 0);
  CHECK(error_line("[run]\nscan = 1 2\n") == 2);
  CHECK(error_line("[grid]\nn_rho = 64\n[grid]\nn_rho = 32\n") == 3);
}

TEST_CASE("configuration values") {
  const auto cfg = parse_config(
      "[grid]\nrho_extent_fm = 40 ; comment\nn_rho = 64\nn_alpha = 32\n"
      "[solver]\ntolerance = 1e-9\n[run]\nenergies = -1 2.5\nlab_energies = 14.1\n"
      "scan = 0.5 1.5 0.5\nincoming = nd nnp:1 nnp:2\nworkers = 2\n");
  CHECK(cfg.grid.rho_extent_fm == 40.0);
  CHECK(cfg.grid.n_rho == 64);
  CHECK(cfg.solver.gmres.tol == 1e-9);
  CHECK(cfg.energies == std::vector<double>{-1.0, 2.5});
  CHECK(cfg.lab_energies == std::vector<double>{14.1});
  CHECK(cfg.scan.points() == std::vector<double>{0.5, 1.0, 1.5});
  REQUIRE(cfg.incoming.size() == 3);
  CHECK(cfg.incoming[2].str() == "nnp:2");
  CHECK(cfg.workers == 2);
  CHECK(IncomingSelector::parse("nd").bound);
  CHECK(IncomingSelector::parse("nnp:3").n == 3);
  CHECK_THROWS(IncomingSelector::parse("nnp:0"));
  CHECK_THROWS(IncomingSelector::parse("pp"));
}

TEST_CASE("rendered configuration reads back identically") {
  const auto cfg = parse_config("[grid]\nn_rho = 96\n[extraction]\nnormalization = reduced_mass\n[run]\nenergies = 3\n");
  const std::string text = render_config(cfg);
  const auto again = parse_config(text);
  CHECK(render_config(again) == text);
  CHECK(again.grid.n_rho == 96);
  CHECK(again.extraction.normalization == ExtractionOptions::Normalization::ReducedMass);
  CHECK(render_config(RunConfig{}) == render_config(parse_config(render_config(RunConfig{}))));
}

TEST_CASE("number formatting round trips") {
  for (double v : {0.1, -2.230687605, 1e-300, 6.02214076e23, 1.0 / 3.0})
    CHECK(std::stod(format_double(v)) == v);
  CHECK(dump_json(json{{"a", 0.5}, {"b", json::array({1.0, 2.0})}}) == "{\n  \"a\": 0.5,\n  \"b\": [1, 2]\n}\n");
}

TEST_CASE("S-matrix JSON round trip and damaged files") {
  const auto q = toy_quadrature();
  ScatteringMatrix s;
  s.energy = 2.5;
  s.S = HybridMatrix(1, 1, q);
  s.incident = incident_matrix(1, {Eigen::VectorXcd::Constant(3, 0.7)}, q);
  s.S.scalar(0, 0) = cplx(0.3, -0.4);
  s.S.scalar(1, 0) = cplx(0.01, 0.02);
  s.S.row_block(0) << cplx(1, 2), cplx(3, 4), cplx(5, 6);
  s.S.row_block(1) << 0.1, cplx(0, 0.2), 0.3;
  s.solved = {true, true};
  const json j = smatrix_to_json(s, -2.23);
  const std::string text = dump_json(j);
  const auto back = smatrix_from_json(json::parse(text));
  CHECK(back.energy == 2.5);
  CHECK(back.S.scalar(1, 0) == s.S.scalar(1, 0));
  CHECK(back.S.row_block(0) == s.S.row_block(0));
  CHECK(back.incident.row_block(1) == s.incident.row_block(1));
  CHECK(back.S.quadrature().points == q.points);
  CHECK(dump_json(smatrix_to_json(back, -2.23)) == text);

  json parsed;
  CHECK_THROWS(parsed = json::parse(text.substr(0, text.size() / 2)));
  json missing = j;
  missing.erase("S");
  CHECK_THROWS_AS(smatrix_from_json(missing), std::runtime_error);
  json bad = j;
  bad["S"]["scalars"][0][0] = json::array({1.0});
  CHECK_THROWS_AS(smatrix_from_json(bad), std::runtime_error);
}

TEST_CASE("defects subcommand") {
  const auto dir = scratch("defects");
  AlphaQuadrature q;
  q.channels = 0;
  ScatteringMatrix s;
  s.energy = -1.0;
  s.S = HybridMatrix(1, 0, q);
  s.S.scalar(0, 0) = 1.0;
  s.incident = incident_matrix(1, {}, q);
  s.solved = {true};
  write_text(dir / "identity.json", dump_json(smatrix_to_json(s, -2.23)));
  std::ostringstream log;
  REQUIRE(cmd_defects({dir / "identity.json"}, dir, log) == 0);
  const json report = json::parse(read_text(dir / "defects.json"));
  CHECK(report.at(0).at("eta_u").get<double>() == 0.0);
  CHECK(report.at(0).at("eta_r").get<double>() == 0.0);

  const std::string text = read_text(dir / "identity.json");
  write_text(dir / "truncated.json", text.substr(0, text.size() / 2));
  CHECK(cmd_defects({dir / "truncated.json"}, dir, log) == 1);
  s.solved = {false};
  write_text(dir / "partial.json", dump_json(smatrix_to_json(s, -2.23)));
  CHECK(cmd_defects({dir / "partial.json"}, dir, log) == 1);
  CHECK(cmd_defects({}, dir, log) == 2);
  CHECK(cmd_defects({dir / "absent.json"}, dir, log) != 0);
}

TEST_CASE("scatter runs are reproducible bit for bit") {
  RunConfig cfg = parse_config("[grid]\nrho_extent_fm = 60\nn_rho = 32\nn_alpha = 16\n");
  std::string first;
  for (int run = 0; run < 2; ++run) {
    const auto dir = scratch("rerun" + std::to_string(run));
    cfg.output = dir.string();
    std::ostringstream log;
    REQUIRE(cmd_scatter(cfg, -1.0, std::nullopt, log) == 0);
    for (const char* f : {"smatrix.json", "summary.json", "config.ini", "diagnostics.jsonl"})
      CHECK(fs::exists(dir / f));
    const std::string s = read_text(dir / "smatrix.json");
    if (run == 0)
      first = s;
    else
      CHECK(s == first);
  }
  // Closed channel is rejected.
  std::ostringstream log;
  cfg.output = scratch("closed").string();
  cfg.incoming = {IncomingSelector::parse("nnp:1")};
  CHECK(cmd_scatter(cfg, -1.0, std::nullopt, log) == 2);
}
