#include <doctest.h>

#include "frozen.hpp"
#include "sseq/chart.hpp"
#include "sseq/corpus.hpp"
#include "sseq/json_io.hpp"

using namespace sseq;

TEST_CASE("simplicial sets round-trip byte for byte") {
  for (const auto& expr : {"point", "delta(3)", "boundary-delta(3)", "sphere(2)", "wedge(1,2)", "product(sphere(1),delta(1))"}) {
    auto x = builtin_set(expr);
    std::string a = simplicial_set_json(x);
    CHECK(simplicial_set_json(parse_simplicial_set(a)) == a);
  }
}

TEST_CASE("degeneracy aliases") {
  auto x = parse_simplicial_set(R"({"truncation": 2, "finite": true,
    "simplices": {"0": ["v"], "1": ["e"], "2": ["t"]},
    "faces": {"1": {"e": ["v", "v"]}, "2": {"t": ["e", "ee", "e"]}},
    "degeneracies": {"ee": "v[0,0]"}})");
  CHECK(x.count(2) == 1);
  CHECK(x.faces(2, 0)[1].degenerate());
}

TEST_CASE("parse errors carry positions or paths") {
  try {
    parse_simplicial_set("{\n  \"truncation\": 1,\n  \"simplices\": [\n}");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  try {
    parse_simplicial_set(R"({"truncation": 1, "simplices": {"0": ["v"], "1": ["e"]}, "faces": {"1": {"e": ["v", "w"]}}})");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("faces.1.e[1]") != std::string::npos);
  }
  CHECK_THROWS_AS(builtin_set("sphere(x)"), ParseError);
  CHECK_THROWS_AS(builtin_set("torus(2)"), ParseError);
  CHECK_THROWS_AS(parse_fibration("sphere(2)"), ParseError);
}

TEST_CASE("fibrations, filtered coalgebras and coalgebras round-trip") {
  Fibration fib = parse_fibration("product(sphere(1), sphere(2))");
  std::string a = fibration_json(fib);
  CHECK(fibration_json(parse_fibration(a)) == a);
  for (const auto& m : skeletal_corpus(4, 11, {Field::prime(3), Field::rationals()})) {
    std::string t = filtered_coalgebra_json(m.coalgebra);
    CHECK(filtered_coalgebra_json(parse_filtered_coalgebra(t)) == t);
    std::string c = filtered_complex_json(m.coalgebra.filtered);
    CHECK(filtered_complex_json(parse_filtered_complex(c)) == c);
  }
  auto h = homology_coalgebra(sphere_set(3), Field::prime(5));
  std::string hc = coalgebra_json(h);
  CHECK(coalgebra_json(parse_coalgebra(hc)) == hc);
  CHECK(parse_generator_spec("[1,3,5]").degrees == std::vector<int>{1, 3, 5});
}

TEST_CASE("filtered complex conventions") {
  // degree 1 unlisted: everything at level 0; degree 0 has levels 0 and 2
  auto fc = parse_filtered_complex(R"({"field": "Q", "dims": [2, 1],
    "boundaries": [{"rows": 2, "cols": 1, "entries": [[0, 0, "1"], [1, 0, "-1"]]}],
    "filtration": {"0": {"0": [[[0, "1"], [1, "-1"]]]}, "2": {"0": [[[0, "1"]]]}}})");
  CHECK(fc.level(0, 1).dim() == 1);
  CHECK(fc.level(-1, 0).dim() == 0);
  CHECK(fc.level(0, 0).dim() == 1);
  CHECK(fc.level(1, 0).dim() == 1);
  CHECK(fc.level(2, 0).dim() == 2);
  CHECK(fc.level(7, 0).dim() == 2);
}

TEST_CASE("model detection") {
  Field q = Field::rationals();
  CHECK(load_model("sphere(2)", q).kind == ModelKind::simplicial_set);
  CHECK(load_model("product(point, sphere(1))", q).kind == ModelKind::fibration);
  CHECK(load_model("[1, 3]", q).kind == ModelKind::generators);
  CHECK(load_model(frozen("pages.json")["cases"][0]["complex"].dump(), q).kind == ModelKind::filtered_complex);
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("charts round-trip and keep differentials on listed classes") {
  SerreFiltration sf = serre_filtration(product_fibration(sphere_set(1), sphere_set(3)), Field::rationals());
  CoalgebraSpectralSequence css(sf.coalgebra);
  ChartDocument doc = build_chart(css, 10, {"0123", "Q", std::nullopt});
  CHECK(doc.pages.size() == 5);
  std::string a = chart_json(doc);
  CHECK(chart_json(parse_chart(a)) == a);
  CHECK(doc.pages[2].classes.size() == 4);
  std::string text = chart_text(doc);
  CHECK(text.find("E^2") != std::string::npos);

  auto hand = parse_filtered_complex(frozen("pages.json")["cases"][0]["complex"].dump());
  SpectralSequence ss(hand);
  ChartDocument hd = build_chart(ss, 10, {"x", "Q", 3});
  CHECK(chart_text(hd).find("(1,0) -d^1-> (0,0)") != std::string::npos);
  CHECK(chart_json(parse_chart(chart_json(hd))) == chart_json(hd));
  auto broken = hd;
  broken.pages[1].classes.clear();
  CHECK_THROWS(broken.validate());
}
