#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "hodgelab/catalog.hpp"
#include "hodgelab/complex_io.hpp"
#include "hodgelab/error.hpp"
#include "support.hpp"

using namespace hodgelab;

namespace {

std::filesystem::path tmp_dir() {
  auto d = std::filesystem::temp_directory_path() / "hodgelab_io_test";
  std::filesystem::create_directories(d);
  return d;
}

std::string write_tmp(const std::string& name, const std::string& text) {
  auto p = (tmp_dir() / name).string();
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  return p;
}

ErrorCode load_code(const std::string& text) {
  auto p = write_tmp("bad.json", text);
  try {
    load_complex_file(p);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;  // sentinel: no throw
}

}  // namespace

TEST_CASE("save, load, save round-trips byte for byte") {
  for (const char* name : {"torus1", "torus2", "iwasawa", "kodaira_thurston"}) {
    CAPTURE(name);
    BigradedComplex c = find_entry(name)->make();
    std::string once = serialize_complex(c);
    auto p = write_tmp(std::string(name) + ".json", once);
    BigradedComplex back = load_complex(p);
    CHECK(back.n() == c.n());
    for (int k = 0; k <= 2 * c.n(); ++k)
      CHECK(back.total_dim(k) == c.total_dim(k));
    for (int p0 = 0; p0 <= c.n(); ++p0)
      for (int q0 = 0; q0 <= c.n(); ++q0) {
        CHECK(back.del(p0, q0) == c.del(p0, q0));
        CHECK(back.dbar(p0, q0) == c.dbar(p0, q0));
        CHECK(back.labels(p0, q0) == c.labels(p0, q0));
      }
    CHECK(serialize_complex(back) == once);
  }
}

TEST_CASE("float complexes round-trip through dyadic entries") {
  BigradedComplex f = testsup::float_copy(iwasawa());
  std::string once = serialize_complex(f);
  auto p = write_tmp("iwasawa_float.json", once);
  BigradedComplex back = load_complex(p);
  CHECK(back.mode() == ScalarMode::Float);
  CHECK(serialize_complex(back) == once);
  CHECK((back.dbar_f(1, 0) - f.dbar_f(1, 0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("metric blocks survive the round trip") {
  BigradedComplex c = kodaira_thurston();
  HermitianMetric g = random_metric(c, 5);
  std::string once = serialize_complex(c, &g);
  auto p = write_tmp("kt_metric.json", once);
  ComplexFile file = load_complex_file(p);
  REQUIRE(file.metric.has_value());
  for (int p0 = 0; p0 <= c.n(); ++p0)
    for (int q0 = 0; q0 <= c.n(); ++q0) {
      CAPTURE(p0);
      CAPTURE(q0);
      CHECK((file.metric->gram(p0, q0) - g.gram(p0, q0))
                .cwiseAbs()
                .maxCoeff() == 0.0);
    }
  CHECK(serialize_complex(file.complex_data, &*file.metric) == once);
}

TEST_CASE("identity metrics are omitted from the file") {
  BigradedComplex c = torus(1);
  HermitianMetric g = HermitianMetric::identity(c);
  std::string s = serialize_complex(c, &g);
  CHECK(s.find("\"metric\"") == std::string::npos);
  CHECK(s == serialize_complex(c));
}

TEST_CASE("serialization is deterministic") {
  BigradedComplex c = iwasawa();
  CHECK(serialize_complex(c) == serialize_complex(c));
  CoveringComplex cov = torus_cover(3);
  CHECK(serialize_cover(cov) == serialize_cover(cov));
}

TEST_CASE("covers round-trip with an inline base") {
  CoveringComplex cov = torus_cover(3);
  std::string once = serialize_cover(cov);
  auto p = write_tmp("cover3.json", once);
  CoveringComplex back = load_cover_file(p);
  CHECK(back.gamma_order() == 3);
  REQUIRE(back.sectors().size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(back.sectors()[j].character == cov.sectors()[j].character);
    CHECK(back.sectors()[j].theta01 == cov.sectors()[j].theta01);
    CHECK(back.sectors()[j].sector.del(0, 0) ==
          cov.sectors()[j].sector.del(0, 0));
  }
  CHECK(serialize_cover(back) == once);
}

TEST_CASE("covers may reference the base complex by path") {
  save_complex((tmp_dir() / "base_torus.json").string(), torus(1));
  std::string cover_json = R"({
    "base": "base_torus.json",
    "gammaOrder": 2,
    "sectors": [
      {"character": "chi0", "theta10": [["0","0"]], "theta01": [["0","0"]]},
      {"character": "chi1", "theta10": [["0","1"]], "theta01": [["0","1"]]}
    ]
  })";
  auto p = write_tmp("cover_by_path.json", cover_json);
  CoveringComplex cov = load_cover_file(p);
  CHECK(cov.gamma_order() == 2);
  CHECK(cov.base().dim(1, 1) == 1);
  CHECK(cov.sectors()[1].sector.del(0, 0).at(0, 0) == CRat::imag_unit());
}

TEST_CASE("malformed files fail with parse errors") {
  CHECK(load_code("this is not json") == ErrorCode::ParseError);
  CHECK(load_code("{}") == ErrorCode::ParseError);
  CHECK(load_code(R"({"mode":"exact","spaces":[]})") == ErrorCode::ParseError);
  CHECK(load_code(R"({"n":1,"mode":"quantum","spaces":[]})") ==
        ErrorCode::ParseError);
  // zero denominator inside an entry
  CHECK(load_code(R"({"n":1,"mode":"exact",
    "spaces":[{"p":0,"q":0,"dim":1},{"p":1,"q":0,"dim":1}],
    "del":[{"p":0,"q":0,"entries":[[0,0,"3/0","0"]]}]})") ==
        ErrorCode::ParseError);
  // duplicate entry for one cell
  CHECK(load_code(R"({"n":1,"mode":"exact",
    "spaces":[{"p":0,"q":0,"dim":1},{"p":1,"q":0,"dim":1}],
    "del":[{"p":0,"q":0,"entries":[[0,0,"1","0"],[0,0,"2","0"]]}]})") ==
        ErrorCode::ParseError);
  // out-of-range row index
  CHECK(load_code(R"({"n":1,"mode":"exact",
    "spaces":[{"p":0,"q":0,"dim":1},{"p":1,"q":0,"dim":1}],
    "del":[{"p":0,"q":0,"entries":[[5,0,"1","0"]]}]})") ==
        ErrorCode::ParseError);
  // duplicate space declaration
  CHECK(load_code(R"({"n":1,"mode":"exact",
    "spaces":[{"p":0,"q":0,"dim":1},{"p":0,"q":0,"dim":2}]})") ==
        ErrorCode::ParseError);
  // plain numbers are not rational strings
  CHECK(load_code(R"({"n":1,"mode":"exact",
    "spaces":[{"p":0,"q":0,"dim":1},{"p":1,"q":0,"dim":1}],
    "del":[{"p":0,"q":0,"entries":[[0,0,0.5,"0"]]}]})") ==
        ErrorCode::ParseError);
}

TEST_CASE("files that break the bigraded relations are rejected") {
  // del.dbar + dbar.del != 0 on a four-cell square
  std::string text = R"({"n":1,"mode":"exact",
    "spaces":[{"p":0,"q":0,"dim":1},{"p":1,"q":0,"dim":1},
              {"p":0,"q":1,"dim":1},{"p":1,"q":1,"dim":1}],
    "del":[{"p":0,"q":0,"entries":[[0,0,"1","0"]]},
           {"p":0,"q":1,"entries":[[0,0,"1","0"]]}],
    "dbar":[{"p":0,"q":0,"entries":[[0,0,"1","0"]]},
            {"p":1,"q":0,"entries":[[0,0,"1","0"]]}]})";
  auto p = write_tmp("broken.json", text);
  try {
    load_complex(p);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
  }
}

TEST_CASE("bad metric blocks are rejected") {
  std::string text = R"({"n":1,"mode":"exact",
    "spaces":[{"p":0,"q":0,"dim":1}],
    "metric":[{"p":0,"q":0,"gram":[[0,0,-1.0,0.0]]}]})";
  auto p = write_tmp("bad_metric.json", text);
  try {
    load_complex_file(p);
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }
}

TEST_CASE("missing paths raise io errors") {
  try {
    load_complex((tmp_dir() / "does_not_exist.json").string());
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
  try {
    save_complex((tmp_dir() / "no_such_dir" / "x.json").string(), torus(1));
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("loaded catalog complexes agree with their reports") {
  BigradedComplex c = iwasawa();
  auto p = write_tmp("iwasawa_report.json", serialize_complex(c));
  BigradedComplex back = load_complex(p);
  InequalityReport a = frolicher_check(c);
  InequalityReport b = frolicher_check(back);
  REQUIRE(a.degrees.size() == b.degrees.size());
  for (std::size_t k = 0; k < a.degrees.size(); ++k) {
    CHECK(a.degrees[k].b == b.degrees[k].b);
    CHECK(a.degrees[k].h_dbar_sum == b.degrees[k].h_dbar_sum);
    CHECK(a.degrees[k].ba_sum == b.degrees[k].ba_sum);
  }
}
