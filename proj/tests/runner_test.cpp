#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hodgelab/catalog.hpp"
#include "hodgelab/complex_io.hpp"
#include "hodgelab/error.hpp"
#include "hodgelab/runner.hpp"
#include "support.hpp"

using namespace hodgelab;
using nlohmann::json;

namespace {

std::filesystem::path tmp_dir() {
  auto d = std::filesystem::temp_directory_path() / "hodgelab_runner_test";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("h grids validate their parameters") {
  HGridSpec g{0.5, 0.5, 3};
  auto v = g.values();
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 0.5);
  CHECK(v[1] == 0.25);
  CHECK(v[2] == 0.125);
  CHECK_THROWS_AS((HGridSpec{0.0, 0.5, 3}.values()), Error);
  CHECK_THROWS_AS((HGridSpec{2.0, 0.5, 3}.values()), Error);
  CHECK_THROWS_AS((HGridSpec{1.0, 1.0, 3}.values()), Error);
  CHECK_THROWS_AS((HGridSpec{1.0, 0.5, 0}.values()), Error);
}

TEST_CASE("check runs on every catalog complex") {
  for (const char* name : {"torus1", "torus2", "iwasawa", "kodaira_thurston"}) {
    CAPTURE(name);
    RunConfig cfg;
    cfg.subcommand = "check";
    cfg.model = name;
    RunResult r = run_check(cfg);
    CHECK(r.status == 0);
    json j = json::parse(r.report);
    CHECK(j.at("all_pass").get<bool>());
    CHECK(j.at("model").get<std::string>() == name);
  }
}

TEST_CASE("check accepts a complex file") {
  auto p = (tmp_dir() / "iwasawa.json").string();
  save_complex(p, iwasawa());
  RunConfig cfg;
  cfg.subcommand = "check";
  cfg.file = p;
  RunResult r = run_check(cfg);
  CHECK(r.status == 0);
  json j = json::parse(r.report);
  CHECK(j.at("degrees")[1].at("b").get<std::string>() == "4");
  CHECK(j.at("degrees")[1].at("h_dbar_sum").get<std::string>() == "5");
}

TEST_CASE("float files cannot drive the exact reports") {
  auto p = (tmp_dir() / "float.json").string();
  save_complex(p, testsup::float_copy(torus(1)));
  RunConfig cfg;
  cfg.subcommand = "check";
  cfg.file = p;
  std::ostringstream out, err;
  CHECK(run(cfg, out, err) == 1);
  CHECK(err.str().find("MODE_MISMATCH") != std::string::npos);
}

TEST_CASE("unknown models are rejected") {
  RunConfig cfg;
  cfg.subcommand = "check";
  cfg.model = "moebius";
  std::ostringstream out, err;
  CHECK(run(cfg, out, err) == 1);
  CHECK(out.str().empty());
  CHECK(!err.str().empty());
}

TEST_CASE("unknown subcommands are rejected") {
  RunConfig cfg;
  cfg.subcommand = "transmogrify";
  cfg.model = "torus1";
  std::ostringstream out, err;
  CHECK(run(cfg, out, err) == 1);
}

TEST_CASE("sweep emits the pinned csv header") {
  RunConfig cfg;
  cfg.subcommand = "sweep";
  cfg.model = "iwasawa";
  cfg.k = 1;
  cfg.grid = {1.0, 0.5, 4};
  cfg.format = OutFormat::Csv;
  RunResult r = run_sweep(cfg);
  CHECK(r.status == 0);
  std::istringstream lines(r.report);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "h,k,sigma,tau,N_h_sigma,N_0_tau,sigma_min,resolvent_dist,"
        "rs_criterion,verdict");
  std::string row;
  int rows = 0;
  while (std::getline(lines, row))
    if (!row.empty()) ++rows;
  CHECK(rows == 4);
  CHECK(r.report.find("INJECTIVE") != std::string::npos);
}

TEST_CASE("sweep reports h_star in json") {
  RunConfig cfg;
  cfg.subcommand = "sweep";
  cfg.model = "iwasawa";
  cfg.k = 1;
  cfg.grid = {1.0, 0.5, 5};
  RunResult r = run_sweep(cfg);
  CHECK(r.status == 0);
  json j = json::parse(r.report);
  CHECK(j.at("verdict").get<std::string>() == "PASS");
  CHECK(j.at("h_star").get<double>() == 1.0);
  CHECK(j.at("points").size() == 5);
  CHECK(j.at("points")[0].at("n_h_sigma").get<int>() == 4);
  CHECK(j.at("points")[0].at("n_0_tau").get<int>() == 5);
}

TEST_CASE("cover reports gamma-normalized dimensions") {
  RunConfig cfg;
  cfg.subcommand = "cover";
  cfg.model = "torus1_z2";
  RunResult r = run_cover(cfg);
  CHECK(r.status == 0);
  json j = json::parse(r.report);
  CHECK(j.at("gamma_order").get<int>() == 2);
  CHECK(j.at("degrees")[0].at("b").get<std::string>() == "1/2");
  CHECK(j.at("degrees")[1].at("b").get<std::string>() == "1");
  CHECK(j.at("all_pass").get<bool>());
}

TEST_CASE("cover accepts a cover file") {
  auto p = (tmp_dir() / "cover2.json").string();
  save_cover(p, torus_cover(2));
  RunConfig cfg;
  cfg.subcommand = "cover";
  cfg.file = p;
  RunResult r = run_cover(cfg);
  CHECK(r.status == 0);
  json j = json::parse(r.report);
  CHECK(j.at("gamma_order").get<int>() == 2);
}

TEST_CASE("inject certifies full rank on the catalog") {
  RunConfig cfg;
  cfg.subcommand = "inject";
  cfg.model = "kodaira_thurston";
  cfg.k = 2;
  cfg.grid = {0.25, 0.5, 3};
  RunResult r = run_inject(cfg);
  CHECK(r.status == 0);
  json j = json::parse(r.report);
  for (const auto& w : j.at("witnesses")) {
    CHECK(w.at("rank").get<int>() == 4);
    CHECK(w.at("b_k").get<int>() == 4);
    CHECK(w.at("verdict").get<std::string>() == "INJECTIVE");
  }
}

TEST_CASE("reports can be written to a file") {
  RunConfig cfg;
  cfg.subcommand = "check";
  cfg.model = "torus1";
  cfg.out_path = (tmp_dir() / "report.json").string();
  std::ostringstream out, err;
  CHECK(run(cfg, out, err) == 0);
  CHECK(out.str().empty());
  std::ifstream in(cfg.out_path, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  CHECK(body.str() == run_check(cfg).report);
}

TEST_CASE("metric seeds conflict with file metrics") {
  auto p = (tmp_dir() / "with_metric.json").string();
  BigradedComplex c = iwasawa();
  HermitianMetric g = random_metric(c, 7);
  save_complex(p, c, &g);
  RunConfig cfg;
  cfg.subcommand = "sweep";
  cfg.file = p;
  cfg.k = 1;
  cfg.metric_seed = 3;
  std::ostringstream out, err;
  CHECK(run(cfg, out, err) == 1);
}

TEST_CASE("identical configurations produce identical reports") {
  RunConfig check;
  check.subcommand = "check";
  check.model = "iwasawa";
  CHECK(run_check(check).report == run_check(check).report);

  RunConfig sweep;
  sweep.subcommand = "sweep";
  sweep.model = "kodaira_thurston";
  sweep.k = 2;
  sweep.grid = {0.5, 0.5, 4};
  sweep.metric_seed = 11;
  CHECK(run_sweep(sweep).report == run_sweep(sweep).report);

  RunConfig cover;
  cover.subcommand = "cover";
  cover.model = "torus1_z3";
  cover.format = OutFormat::Csv;
  CHECK(run_cover(cover).report == run_cover(cover).report);

  RunConfig inject;
  inject.subcommand = "inject";
  inject.model = "torus2";
  inject.k = 1;
  inject.grid = {0.125, 0.5, 2};
  CHECK(run_inject(inject).report == run_inject(inject).report);
}
