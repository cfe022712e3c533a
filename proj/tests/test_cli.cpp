#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "liespec/cli.hpp"
#include "liespec/parallel.hpp"

using namespace liespec;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "liespec-tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

std::string catalog_file(const std::string& name, const std::string& entry,
                         const std::vector<std::string>& params = {}) {
  std::vector<std::string> args{"catalog", "show", entry};
  for (const auto& p : params) {
    args.push_back("--param");
    args.push_back(p);
  }
  RunResult r = run(args);
  REQUIRE(r.code == 0);
  return write_temp(name, r.out).string();
}

}  // namespace

TEST_CASE("validate command") {
  auto good = catalog_file("su2.alg", "su2");
  RunResult r = run({"validate", good});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["valid"] == true);

  auto bad = write_temp("bad_jacobi.alg",
                        "dim 3\nbracket 1 2 = x3\nbracket 1 3 = x1\n");
  RunResult rb = run({"validate", bad.string()});
  CHECK(rb.code == 0);
  auto jb = json::parse(rb.out);
  CHECK(jb["valid"] == false);
  CHECK(jb["violations"].size() == 1);
  CHECK(jb["violations"][0]["triple"] == json::array({1, 2, 3}));
}

TEST_CASE("charpoly command and flags") {
  auto su2 = catalog_file("su2b.alg", "su2");
  RunResult r = run({"charpoly", su2});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["charpoly"] == "z0^3 - 4*z0*z1^2 - 4*z0*z2^2 - 4*z0*z3^2");
  CHECK(j["z0_multiplicity"] == 1);

  auto h = catalog_file("heis.alg", "heisenberg3");
  auto jr = json::parse(run({"charpoly", h, "--reduced"}).out);
  CHECK(jr["z0_multiplicity"] == 3);
  CHECK(jr["reduced"] == "1");
  auto js = json::parse(run({"charpoly", h, "--reduced", "--single-z0"}).out);
  CHECK(js["reduced"] == "z0^2");

  auto jt = json::parse(run({"charpoly", su2, "--terms"}).out);
  REQUIRE(jt["terms"].size() == 4);
  CHECK(jt["terms"][0]["monomial"] == json::array({3, 0, 0, 0}));
  CHECK(jt["terms"][0]["coeff"] == "1");
  CHECK(jt["terms"][1]["coeff"] == "-4");
}

TEST_CASE("invariants of su2") {
  auto su2 = catalog_file("inv_su2.alg", "su2");
  auto j = json::parse(run({"invariants", su2}).out);
  CHECK(j["charpoly"] == "z0^3 - 4*z0*z1^2 - 4*z0*z2^2 - 4*z0*z3^2");
  CHECK(j["solvable"] == false);
  CHECK(!j.contains("poincare"));
  CHECK(j["spectra"][0]["generator"] == "x1");
}

TEST_CASE("invariants and poincare") {
  auto a12 = catalog_file("a12.alg", "A_ab", {"a=1", "b=2"});
  auto j = json::parse(run({"invariants", a12}).out);
  CHECK(j["dim"] == 4);
  CHECK(j["solvable"] == true);
  CHECK(j["nilpotent"] == false);
  CHECK(j["rank_lambda"] == 1);
  CHECK(j["k"] == 4);
  CHECK(j["poincare"] == json::array({1, 3, 2}));

  RunResult pr = run({"poincare", a12});
  CHECK(pr.code == 0);
  CHECK(pr.out == "[1,3,2]\n");

  auto h = catalog_file("heis2.alg", "heisenberg3");
  CHECK(run({"poincare", h}).out == "[1]\n");
}

TEST_CASE("non-solvable domain errors exit 1") {
  auto sl2 = catalog_file("sl2.alg", "sl2");
  RunResult r = run({"spectral", sl2});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"]["code"] == "NotFullyFactorable");
  RunResult rp = run({"poincare", sl2});
  CHECK(rp.code == 1);
}

TEST_CASE("input errors exit 2") {
  CHECK(run({"invariants", "/nonexistent/file.alg"}).code == 2);
  auto broken = write_temp("broken.alg", "dim 3\nbracket 1 2 = 7\n");
  RunResult r = run({"invariants", broken.string()});
  CHECK(r.code == 2);
  auto j = json::parse(r.err);
  CHECK(j["error"]["code"] == "ParseError");
  CHECK(j["error"]["diagnostics"][0]["line"] == 2);
  CHECK(run({"catalog", "show", "missing_entry"}).code == 2);
  CHECK(run({"bogus-command"}).code == 2);
}

TEST_CASE("compare command") {
  auto a12 = catalog_file("cmp_a12.alg", "A_ab", {"a=1", "b=2"});
  auto a13 = catalog_file("cmp_a13.alg", "A_ab", {"a=1", "b=3"});
  auto j = json::parse(run({"compare", a12, a13}).out);
  CHECK(j["verdict"] == "distinguished");
  CHECK(j["by"] == "extension_spectrum_up_to_scalar");

  auto j2 = json::parse(run({"compare", a12, a12}).out);
  CHECK(j2["verdict"] == "indistinguishable_by_computed_invariants");

  auto su2 = catalog_file("cmp_su2.alg", "su2");
  auto heis = catalog_file("cmp_heis.alg", "heisenberg3");
  auto j3 = json::parse(run({"compare", su2, heis}).out);
  CHECK(j3["verdict"] == "distinguished");
  CHECK(j3["by"] == "solvable");
}

TEST_CASE("transform command with checks") {
  auto sl2 = catalog_file("tr_sl2.alg", "sl2");
  auto mfile = write_temp("aut.mat",
                          R"({"rows": [["1","0","0"],["0","3/5+4/5i","0"],["0","0","3/5-4/5i"]]})");
  RunResult r = run({"transform", sl2, "--matrix", mfile.string(), "--check-aut",
                     "--check-unitary"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["is_automorphism"] == true);
  CHECK(j["is_unitary"] == true);
  // an automorphism leaves the structure constants unchanged
  CHECK(j["brackets"].size() == 3);

  auto swap = write_temp("swap.mat",
                         R"({"rows": [["0","1","0"],["1","0","0"],["0","0","1"]]})");
  auto j2 = json::parse(
      run({"transform", sl2, "--matrix", swap.string(), "--check-aut"}).out);
  CHECK(j2["is_automorphism"] == false);

  auto sing = write_temp("sing.mat",
                         R"({"rows": [["0","0","0"],["0","0","0"],["0","0","0"]]})");
  CHECK(run({"transform", sl2, "--matrix", sing.string()}).code == 1);
}

TEST_CASE("rep sl2") {
  RunResult r = run({"rep", "sl2", "--m", "2", "--closed-form"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["dim"] == 3);
  CHECK(j["charpoly"] == j["closed_form"]);
  CHECK(j["matrices"]["H"][0][0] == "2");
}

TEST_CASE("gaussian catalog parameters work through the CLI") {
  auto file = catalog_file("a_gauss.alg", "A_ab", {"a=2+1i", "b=2"});
  RunResult r = run({"poincare", file});
  CHECK(r.code == 0);
  CHECK(r.out == "[1,2,1]\n");
}

TEST_CASE("catalog show emits parseable documents in both formats") {
  RunResult jr = run({"catalog", "show", "L_ab", "--param", "a=1", "--param", "b=1"});
  REQUIRE(jr.code == 0);
  auto parsed = json::parse(jr.out);
  CHECK(parsed["dim"] == 3);
  RunResult tr = run({"catalog", "show", "L_ab", "--param", "a=1", "--param", "b=1",
                      "--format", "text"});
  REQUIRE(tr.code == 0);
  auto file = write_temp("lab_text.alg", tr.out);
  CHECK(run({"validate", file.string()}).code == 0);
}

TEST_CASE("tower depth limit is reachable from the command line") {
  // gaussian field occupies the only allowed level; factorization then
  // needs sqrt(5) and must fail loudly
  auto doc = write_temp("lab_gauss.alg",
                        "dim 3\nfield gaussian\n"
                        "bracket 1 3 = x2\nbracket 2 3 = 1*x1 + 1*x2\n");
  RunResult tight = run({"factor", doc.string(), "--tower-depth", "1"});
  CHECK(tight.code == 1);
  CHECK(json::parse(tight.err)["error"]["code"] == "TowerDepthExceeded");
  RunResult roomy = run({"factor", doc.string(), "--tower-depth", "2"});
  CHECK(roomy.code == 0);
}

TEST_CASE("output is byte-identical across runs and thread settings") {
  auto a12 = catalog_file("det_a12.alg", "A_ab", {"a=1", "b=2"});
  int saved = parallel::max_threads();
  parallel::set_max_threads(1);
  RunResult serial1 = run({"invariants", a12});
  RunResult serial2 = run({"invariants", a12});
  parallel::set_max_threads(4);
  RunResult threaded = run({"invariants", a12});
  parallel::set_max_threads(saved);
  CHECK(serial1.out == serial2.out);
  CHECK(serial1.out == threaded.out);
  CHECK(serial1.code == 0);
}
