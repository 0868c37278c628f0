#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "infloc/io/formats.hpp"
#include "infloc/simplicial/sset.hpp"

using namespace infloc;
using nlohmann::json;

TEST_CASE("complex JSON") {
  for (const FiniteSimplicialSet& x : {circle(3), circle(5), torus7(), standard_simplex(3), simplex_boundary(3)}) {
    FiniteSimplicialSet y = complex_from_json(complex_to_json(x));
    CHECK(y.f_vector() == x.f_vector());
    for (int n = 0; n <= x.dim(); ++n)
      for (std::size_t k = 0; k < x.count(n); ++k) CHECK(y.label(n, k) == x.label(n, k));
  }
  json by_label = json::parse(R"({"vertices": ["a", "b", "c"], "simplices": [["a", "b"], ["b", "c"], ["a", "c"]]})");
  CHECK(complex_from_json(by_label).euler_characteristic() == 0);
  CHECK_THROWS_AS(complex_from_json(json::parse(R"({"vertices": ["a"], "simplices": [["a", "z"]]})")), InvalidInput);
  CHECK_THROWS_AS(complex_from_json({{"simplices", json::array()}}), InvalidInput);
}

TEST_CASE("local system JSON") {
  auto base = std::make_shared<const FiniteSimplicialSet>(circle(3));
  json sign = json::parse(R"({"rank": 1, "monodromy": [["01", [[-1]]]]})");
  LocalSystem ls = local_system_from_json(sign, base, Ring::Z());
  CHECK(local_system_cohomology(ls) == CohomologyReport{0, {GroupSummary{0, {}}, GroupSummary{0, {mpz_class(2)}}}});
  CHECK(local_system_from_json(local_system_to_json(ls), base, Ring::Z()) == ls);
  json pair = json::parse(R"({"rank": 1, "monodromy": [[["0", "1"], [[-1]]]]})");
  CHECK(local_system_from_json(pair, base, Ring::Z()) == ls);
  CHECK_THROWS_AS(local_system_from_json(json::parse(R"({"rank": 1, "monodromy": [["07", [[-1]]]]})"), base, Ring::Z()), InvalidInput);
  CHECK_THROWS_AS(local_system_from_json(json::parse(R"({"rank": 2, "monodromy": [["01", [[-1]]]]})"), base, Ring::Z()), InvalidInput);
  // a non-invertible transport is not a local system
  CHECK_THROWS_AS(local_system_from_json(json::parse(R"({"rank": 1, "monodromy": [["01", [[2]]]]})"), base, Ring::Z()), InvalidInput);
}

TEST_CASE("twisted module JSON and references") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "infloc_formats_test";
  fs::create_directories(dir / "sub");
  {
    std::ofstream(dir / "sub" / "circle.json") << complex_to_json(circle(3)).dump();
    std::ofstream(dir / "alg.json") << json{{"complex", "sub/circle.json"}, {"ring", "Q"}}.dump();
  }
  json doc = json::parse(R"({"algebra": "alg.json", "basis": [["a", 0]], "twisting": [["a", "a", [["01", 1]]]]})");
  JsonLoader loader(dir);
  TwistedModule m = twisted_module_from_json(doc, loader);
  CHECK(m.alg->ring() == Ring::Q());
  CHECK(cohomology(m).at(0).is_zero());
  json back = twisted_module_to_json(m);
  TwistedModule m2 = twisted_module_from_json(back, loader);
  CHECK(m2.x == m.x);
  CHECK(twisted_module_from_json(doc, loader, Ring::F(5)).alg->ring() == Ring::F(5));
  json bad = doc;
  bad["twisting"] = json::parse(R"([["a", "a", [["0", 1]]]])");
  CHECK_THROWS_AS(twisted_module_from_json(bad, loader), InvalidInput);
  CHECK_THROWS_AS(JsonLoader::read(dir / "missing.json"), InvalidInput);
  fs::remove_all(dir);
}

TEST_CASE("report JSON") {
  CohomologyReport r{-1, {GroupSummary{0, {}}, GroupSummary{2, {mpz_class(3)}}}};
  json j = report_to_json(r);
  CHECK(j["lo"] == -1);
  CHECK(j["H"][1]["rank"] == 2);
  CHECK(j["H"][1]["torsion"][0] == 3);
  CHECK_FALSE(j["H"][0].contains("torsion"));
  CHECK(j["text"] == r.str());
}
