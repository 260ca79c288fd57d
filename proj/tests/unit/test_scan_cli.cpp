// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "presets.hpp"

using namespace mfunclab;
using namespace mfunclab::cli;

namespace {

RunOptions quiet(std::size_t grid_n = 801) {
  RunOptions o;
  o.write_files = false;
  o.grid_n = grid_n;
  return o;
}

int exit_code_of(const auto& fn) {
  try {
    fn();
  } catch (const CommandError& e) {
    return e.exit_code();
  }
  return kExitOk;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; (pos = s.find("\r\n", pos)) != std::string::npos; pos += 2) ++n;
  return n;
}

json minimal() {
  return {{"schema", kSchema},
          {"coefficients",
           {{"a", {{"type", "poly"}, {"coeffs", {0}}}},
            {"b", {{"type", "poly"}, {"coeffs", {0}}}},
            {"c", {{"type", "poly"}, {"coeffs", {0}}}}}}};
}

}  // namespace

TEST_CASE("complex values in configs") {
  CHECK(parse_complex(json(2.5), "x") == Complex(2.5, 0.0));
  CHECK(parse_complex(json::array({1.0, -2.0}), "x") == Complex(1.0, -2.0));
  CHECK_THROWS_AS(parse_complex(json("1+2i"), "x"), ConfigError);
  CHECK_THROWS_AS(parse_complex(json::array({1.0, 2.0, 3.0}), "x"), ConfigError);
  CHECK(complex_to_json(Complex(1.0, 2.0)) == json::array({1.0, 2.0}));
}

TEST_CASE("config parsing") {
  const ScanConfig cfg = parse_config(minimal());
  CHECK(cfg.grid_n == 4001);
  CHECK(cfg.seed == 1);
  REQUIRE(cfg.realization);
  CHECK(cfg.realization->dimension() == 2);
  CHECK_FALSE(cfg.window);

  json j = minimal();
  j["typo"] = 1;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = minimal();
  j.erase("schema");
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = minimal();
  j["schema"] = "other/1";
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = minimal();
  j["grid_n"] = 400;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = minimal();
  j["realization"] = {{"type", "matrixB"}, {"entries", {1, 0, 0, 0, 1, 0, 0, 0, 1}}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = minimal();
  j["realization"] = {{"type", "matrixB"}, {"entries", {1, 2, 3}}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = minimal();
  j["coefficients"]["a"] = {{"type", "spline"}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = minimal();
  j["coefficients"]["b"] = {{"type", "trig"}, {"terms", {{{"kind", "tan"}}}}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);

  j = minimal();
  j["realization"] = {{"type", "matrixB"}, {"entries", {{1, {0, 1}}, {{0, -1}, 2}}}};
  const ScanConfig rows = parse_config(j);
  j["realization"]["entries"] = {1, {0, 1}, {0, -1}, 2};
  const ScanConfig flat = parse_config(j);
  const CMatrix r1 = rows.realization->condition_rows(), r2 = flat.realization->condition_rows();
  CHECK(std::equal(r1.entries().begin(), r1.entries().end(), r2.entries().begin(),
                   r2.entries().end()));

  j = minimal();
  j["realization"] = {{"type", "subspace"}, {"selX", {1, 0}}, {"selY", {0, 1}}, {"L1", {{0.5}}}};
  CHECK_NOTHROW(parse_config(j));

  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("presets parse") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    const ScanConfig cfg = parse_config(preset_config(name));
    CHECK(cfg.coefficients);
    CHECK(cfg.window);
  }
  CHECK_THROWS_AS(preset_config("nope"), ConfigError);
}

TEST_CASE("csv quoting") {
  CHECK(CsvWriter::quote("plain") == "plain");
  CHECK(CsvWriter::quote("a,b") == "\"a,b\"");
  CHECK(CsvWriter::quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(CsvWriter::quote("two\nlines") == "\"two\nlines\"");
  CHECK(std::stod(CsvWriter::number(0.1)) == 0.1);
  std::ostringstream out;
  CsvWriter w(out);
  w.row({"x", "y,z"});
  CHECK(out.str() == "x,\"y,z\"\r\n");
}

TEST_CASE("scan of a single-point window") {
  json j = preset_config("decoupled");
  j["window"] = {{"re_min", -1.0}, {"n_re", 1}, {"n_im", 1}};
  const ScanResult res = run_scan(parse_config(j), quiet());
  REQUIRE(res.scan.points.size() == 1);
  CHECK(res.scan.points[0].lambda == Complex(-1.0));
  CHECK(res.scan.points[0].status == triplet::PointStatus::Ok);
  CHECK(std::isfinite(res.scan.points[0].inv_norm));
  CHECK(res.detected.empty());
  CHECK(res.summary["status_counts"]["ok"] == 1);

  j["window"]["n_re"] = 0;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("scan finds the Neumann eigenvalues") {
  json j = preset_config("decoupled");
  j["window"] = {{"re_min", 5.0}, {"re_max", 12.0}, {"im_min", -0.1}, {"im_max", 0.1},
                 {"n_re", 71}, {"n_im", 3}};
  const ScanResult res = run_scan(parse_config(j), quiet());
  REQUIRE(res.detected.size() == 1);
  CHECK(std::abs(res.detected[0].lambda - 9.869604401089358) < 1e-6);
  CHECK(res.summary["schema"] == "mfunclab.scan-summary/1");
  CHECK(res.ess_dist.size() == res.scan.points.size());
  CHECK(exit_code_of([] { run_scan(parse_config(minimal()), quiet()); }) == kExitConfig);
}

TEST_CASE("scan is independent of the worker count") {
  json j = preset_config("generic");
  j["window"] = {{"re_min", -1.0}, {"re_max", 12.0}, {"im_min", -1.0}, {"im_max", 1.0},
                 {"n_re", 14}, {"n_im", 3}};
  const ScanConfig cfg = parse_config(j);
  RunOptions one = quiet(401), three = quiet(401);
  three.workers = 3;
  const ScanResult a = run_scan(cfg, one);
  const ScanResult b = run_scan(cfg, three);
  REQUIRE(a.scan.points.size() == b.scan.points.size());
  for (std::size_t k = 0; k < a.scan.points.size(); ++k) {
    CHECK(a.scan.points[k].char_det == b.scan.points[k].char_det);
    CHECK(a.scan.points[k].status == b.scan.points[k].status);
  }
  CHECK(a.summary == b.summary);
}

TEST_CASE("halfspace command") {
  json j = minimal();
  j["halfspace"] = {{"rho", {{"min", 0.0}}}, {"arg_mu", {{"min", 0.0}}}, {"abs_mu", {{"min", 1.0}}}};
  const std::string one = run_halfspace(parse_config(j), quiet());
  CHECK(count_lines(one) == 2);
  CHECK(one.find("-1.4142135623730") != std::string::npos);

  j["halfspace"]["rho"] = {{"min", 0.0}, {"max", 1.0}, {"n", 0}};
  CHECK(count_lines(run_halfspace(parse_config(j), quiet())) == 1);

  j["halfspace"]["rho"] = {{"min", 0.0}, {"max", 2.0}, {"n", 3}};
  j["halfspace"]["arg_mu"] = {{"min", -0.5}, {"max", 0.5}, {"n", 2}};
  j["halfspace"]["bvec"] = {1.0, 0.5};
  CHECK(count_lines(run_halfspace(parse_config(j), quiet())) == 7);

  j["halfspace"]["arg_mu"] = {{"min", 0.9}};
  CHECK(exit_code_of([&] { run_halfspace(parse_config(j), quiet()); }) == kExitConfig);
  CHECK(exit_code_of([&] { run_halfspace(parse_config(minimal()), quiet()); }) == kExitConfig);
}

TEST_CASE("compare-twins") {
  json j = preset_config("counterexample");
  j["window"] = {{"re_min", -3.0}, {"re_max", 3.0}, {"im_min", -1.0}, {"im_max", 1.0},
                 {"n_re", 5}, {"n_im", 3}};
  const json rep = run_compare_twins(parse_config(j), quiet());
  CHECK(rep["pass"] == true);
  CHECK(rep["max_M_diff"].get<double>() < 1e-8);
  CHECK(rep["hausdorff"].get<double>() > 0.1);
  CHECK(rep["points_compared"].get<std::size_t>() > 0);

  j["twins"]["bump_height"] = 0.0;
  const json flat = run_compare_twins(parse_config(j), quiet());
  CHECK(flat["hausdorff"] == 0.0);
  CHECK(flat["max_M_diff"] == 0.0);
  CHECK(flat["pass"] == false);

  j["twins"]["interval"] = {0.7, 0.8};
  CHECK(exit_code_of([&] { run_compare_twins(parse_config(j), quiet()); }) == kExitHypothesis);
  CHECK(exit_code_of([&] { run_compare_twins(parse_config(preset_config("generic")), quiet()); }) ==
        kExitConfig);
}

TEST_CASE("krein-verify") {
  json j = preset_config("generic");
  j["krein"] = {{"lambdas", {{-2.0, 0.5}}}, {"trials", 0}};
  const json none = run_krein_verify(parse_config(j), quiet(401));
  CHECK(none["count"] == 0);
  CHECK(none["max"].is_null());
  CHECK(none["pass"] == true);

  j["krein"]["trials"] = 2;
  RunOptions o = quiet(2001);
  o.seed = 7;
  const json two = run_krein_verify(parse_config(j), o);
  CHECK(two["count"] == 2);
  CHECK(two["pass"] == true);
  CHECK(two["max"].get<double>() < 1e-5);
  CHECK(two["seed"] == 7);
  CHECK(run_krein_verify(parse_config(j), o)["trials"] == two["trials"]);
}

TEST_CASE("random trigonometric fields are reproducible") {
  const Grid grid(101);
  std::mt19937_64 r1(3), r2(3);
  const GridFunction a = random_trig_field(grid, r1);
  const GridFunction b = random_trig_field(grid, r2);
  CHECK(l2_norm(a - b) == 0.0);
  CHECK(l2_norm(a) > 0.0);
  CHECK(l2_norm(random_trig_field(grid, r1) - a) > 0.0);
}
