#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "grtk/cli/cli.hpp"
#include "grtk/cli/parallel.hpp"
#include "grtk/cli/suites.hpp"
#include "json.hpp"

using grtk::cli::run;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json invoke_json(const std::vector<std::string>& args) {
  const auto o = invoke(args);
  REQUIRE(o.code == 0);
  return json::parse(o.out);
}

}  // namespace

TEST_CASE("grt-dims rows through weight 3") {
  const json doc = invoke_json({"grt-dims", "--max-weight", "3", "--format", "json"});
  CHECK(doc["command"] == "grt-dims");
  CHECK(doc["ok"] == true);
  REQUIRE(doc["rows"].size() == 3);
  const int expected[] = {0, 0, 1};
  for (int w = 1; w <= 3; ++w) {
    const auto& row = doc["rows"][static_cast<std::size_t>(w - 1)];
    CHECK(row["weight"] == w);
    CHECK(row["dim_grt"] == expected[w - 1]);
    CHECK(row["basis"].size() == static_cast<std::size_t>(expected[w - 1]));
  }
  // g([3])_w = free Lie on two letters plus the central line at weight 1
  CHECK(doc["rows"][0]["dim_g3"] == 3);
  CHECK(doc["rows"][1]["dim_g3"] == 1);
  CHECK(doc["rows"][2]["dim_g3"] == 2);
  CHECK(doc["rows"][2]["class_test"].is_null());
}

TEST_CASE("dk-basis of g([3]) at weight 1") {
  const json doc = invoke_json({"dk-basis", "--points", "3", "--weight", "1"});
  const auto& row = doc["rows"][0];
  CHECK(row["dimension"] == 3);
  CHECK(row["representatives"] == json::array({"t12", "t13", "t23"}));
}

TEST_CASE("check suites pass on a correct build") {
  const auto o = invoke({"check", "--suite", "dsquared", "--arity-cap", "4"});
  CHECK(o.code == 0);
  const json doc = json::parse(o.out);
  CHECK(doc["ok"] == true);
  for (const auto& row : doc["rows"]) {
    CHECK(row["ok"] == true);
    CHECK(row["failure"] == "");
  }
  for (const auto& s : grtk::cli::suite_names()) {
    CAPTURE(s);
    CHECK(invoke({"check", "--suite", s, "--format", "csv"}).code == 0);
  }
}

TEST_CASE("usage errors exit with 2 and print usage") {
  const auto unknown = invoke({"frobnicate"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(unknown.out.empty());

  const auto flag = invoke({"dk-basis", "--pionts", "3"});
  CHECK(flag.code == 2);
  CHECK(flag.err.find("Usage") != std::string::npos);

  CHECK(invoke({}).code == 2);
  CHECK(invoke({"grt-dims", "--format", "xml"}).code == 2);
  CHECK(invoke({"grt-dims", "--max-weight", "0"}).code == 2);
  CHECK(invoke({"grt-dims", "--jobs", "0"}).code == 2);
  CHECK(invoke({"check"}).code == 2);
  CHECK(invoke({"check", "--suite", "nonsense"}).code == 2);
  CHECK(invoke({"homology", "--complex", "koszul"}).code == 2);
  CHECK(invoke({"homology", "--degree-floor", "2"}).code == 2);
  CHECK(invoke({"grt-class-test", "--weight", "2"}).code == 2);  // grt is zero there
  CHECK(invoke({"grt-class-test"}).code == 0);
  CHECK(invoke({"grt-class-test", "--weight", "3", "--arity-window", "3"}).code == 2);
  // beyond the packed-word range the request itself is unsupported
  CHECK(invoke({"dk-basis", "--points", "2", "--weight", "17"}).code == 2);

  const auto help = invoke({"dk-basis", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--points") != std::string::npos);
}

TEST_CASE("csv output: header row and rationals as p/q") {
  const auto o = invoke({"grt-dims", "--max-weight", "5", "--format", "csv"});
  REQUIRE(o.code == 0);
  std::istringstream lines(o.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "weight,dim_g3,dim_shuffle_kernel,dim_grt,basis,coordinates,class_test");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 5);
  // the weight-5 generator has a coefficient −3/2
  CHECK(o.out.find("-3/2") != std::string::npos);

  CHECK(grtk::cli::csv_field(json::array({"a", "b"})) == "a; b");
  CHECK(grtk::cli::csv_field(nullptr) == "");
  CHECK(grtk::cli::csv_field(true) == "true");
  CHECK(grtk::cli::csv_field(json::array({1, 2})) == "[1,2]");
}

TEST_CASE("text output") {
  const auto o = invoke({"freelie-dims", "--letters", "2", "--max-degree", "4", "--format", "text"});
  CHECK(o.code == 0);
  CHECK(o.out.find("lyndon_count") != std::string::npos);
  CHECK(o.out.rfind("status: ok\n") == o.out.size() - 11);
}

TEST_CASE("class test and negative control") {
  const json w3 = invoke_json({"grt-class-test", "--weight", "3", "--index", "0"});
  const auto& row = w3["rows"][0];
  CHECK(row["cocycle"] == true);
  CHECK(row["coboundary"] == false);
  CHECK(row["nonzero_class"] == true);
  CHECK(row["witness"].is_null());

  const json ctl = invoke_json({"grt-class-test", "--control"});
  const auto& c = ctl["rows"][0];
  CHECK(c["element"] == "t12 - t23");
  CHECK(c["in_space"] == true);
  CHECK(c["cocycle"] == false);
  CHECK(c["witness_arity"] == 4);
  CHECK(c["witness"] == "m4 -> t12 - t34");
}

TEST_CASE("homology and deformation dimensions") {
  const json ce = invoke_json({"homology", "--complex", "ce", "--points", "2", "--max-weight", "3"});
  std::size_t total = 0;
  for (const auto& row : ce["rows"]) total += row["rank"].get<std::size_t>();
  CHECK(total == 2);  // H_0 at weight 0 and H_{-1} at weight 1
  const json bar = invoke_json({"homology", "--complex", "bar", "--points", "2", "--max-weight", "3"});
  for (const auto& row : bar["rows"]) {
    const int w = row["weight"], d = row["degree"];
    CHECK(row["rank"] == ((w == 0 && d == 0) || (w == 1 && d == -1) ? 1 : 0));
    CHECK(row["truncated"] == false);
  }
  // a floor above −w truncates the complex; the lowest cell is flagged
  const json cut = invoke_json({"homology", "--complex", "bar", "--points", "2", "--max-weight", "3", "--degree-floor", "-2"});
  bool flagged = false;
  for (const auto& row : cut["rows"]) flagged = flagged || (row["weight"] == 3 && row["degree"] == -2 && row["truncated"] == true);
  CHECK(flagged);

  const json def = invoke_json({"defcomplex", "--arity-cap", "3", "--max-weight", "1"});
  // R(m2) = 1 spans weight 0 at arity 2
  CHECK(def["rows"][0] == json{{"weight", 0}, {"arity", 2}, {"chain_length", 0}, {"degree", 0}, {"dim", 1}});
}

TEST_CASE("output does not depend on the number of jobs") {
  for (const std::vector<std::string>& base : std::vector<std::vector<std::string>>{
           {"grt-dims", "--max-weight", "5"},
           {"defcomplex", "--arity-cap", "4", "--max-weight", "3"},
           {"homology", "--complex", "bar", "--points", "3", "--max-weight", "3"},
           {"check", "--suite", "all"}}) {
    auto one = base, many = base;
    one.insert(one.end(), {"--jobs", "1"});
    many.insert(many.end(), {"--jobs", "4"});
    const auto a = invoke(one), b = invoke(many), c = invoke(many);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
  }
}

TEST_CASE("run_cells keeps index order and rethrows the first failure") {
  const auto squares = grtk::cli::run_cells<int>(50, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < squares.size(); ++i) CHECK(squares[i] == static_cast<int>(i * i));
  auto failing = [](std::size_t i) -> int {
    if (i == 7 || i == 30) throw std::runtime_error("cell " + std::to_string(i));
    return 0;
  };
  try {
    (void)grtk::cli::run_cells<int>(40, 3, failing);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "cell 7");
  }
}

TEST_CASE("basis dumps land in GRTK_CACHE_DIR") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "grtk_cli_cache_test";
  fs::remove_all(dir);
  REQUIRE(setenv("GRTK_CACHE_DIR", dir.c_str(), 1) == 0);
  const auto o = invoke({"dk-basis", "--points", "4", "--weight", "2"});
  unsetenv("GRTK_CACHE_DIR");
  REQUIRE(o.code == 0);
  std::ifstream f(dir / "dk_4_2.json");
  REQUIRE(f.good());
  const json dump = json::parse(f);
  CHECK(dump["points"] == 4);
  CHECK(dump["weight"] == 2);
  CHECK(dump["dimension"] == json::parse(o.out)["rows"][0]["dimension"]);
  CHECK(dump["representatives"].size() == dump["dimension"].get<std::size_t>());
  fs::remove_all(dir);
}
